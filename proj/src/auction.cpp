#include "gsp/auction.hpp"

#include <sstream>

namespace gsp {

Assignment::Assignment(std::vector<std::size_t> slot_to_adv)
    : slot_to_adv_(std::move(slot_to_adv)), adv_to_slot_(slot_to_adv_.size(), slot_to_adv_.size()) {
  const std::size_t n = slot_to_adv_.size();
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t adv = slot_to_adv_[k];
    if (adv >= n || adv_to_slot_[adv] != n) {
      throw InputError("assignment is not a permutation of 1.." + std::to_string(n));
    }
    adv_to_slot_[adv] = k;
  }
}

Assignment Assignment::identity(std::size_t n) {
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  return Assignment(std::move(order));
}

Assignment Assignment::from_one_based(const std::vector<int>& slots) {
  std::vector<std::size_t> order;
  order.reserve(slots.size());
  for (int s : slots) {
    if (s < 1) throw InputError("assignment entries are one-based advertiser indices");
    order.push_back(static_cast<std::size_t>(s - 1));
  }
  return Assignment(std::move(order));
}

std::vector<int> Assignment::one_based() const {
  std::vector<int> out;
  out.reserve(size());
  for (auto a : slot_to_adv_) out.push_back(static_cast<int>(a) + 1);
  return out;
}

std::string Assignment::to_string() const {
  std::ostringstream os;
  os << '(';
  for (std::size_t k = 0; k < size(); ++k) {
    if (k) os << ',';
    os << slot_to_adv_[k] + 1;
  }
  os << ')';
  return os.str();
}

Assignment parse_assignment(const std::string& text) {
  std::vector<int> slots;
  std::string token;
  auto flush = [&] {
    if (token.empty()) return;
    try {
      std::size_t used = 0;
      int value = std::stoi(token, &used);
      if (used != token.size()) throw InputError("");
      slots.push_back(value);
    } catch (const std::exception&) {
      throw InputError("bad permutation entry '" + token + "'");
    }
    token.clear();
  };
  for (char c : text) {
    if (c == '(' || c == ')' || c == ' ' || c == '[' || c == ']') continue;
    if (c == ',') {
      flush();
    } else {
      token += c;
    }
  }
  flush();
  if (slots.empty()) throw InputError("empty permutation");
  return Assignment::from_one_based(slots);
}

std::vector<Assignment> all_assignments(std::size_t n) {
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::vector<Assignment> out;
  do {
    out.emplace_back(order);
  } while (std::next_permutation(order.begin(), order.end()));
  return out;
}

}  // namespace gsp
