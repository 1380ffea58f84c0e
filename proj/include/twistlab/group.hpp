#pragma once

// Finite abelian groups in invariant-factor form a_1 | a_2 | ... (no 1s).

#include <algorithm>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace twistlab {

class AbelianGroup {
 public:
  AbelianGroup() = default;

  /// Z/n_1 x Z/n_2 x ... in canonical form.
  static AbelianGroup from_cyclic(const std::vector<long>& orders) {
    std::map<long, std::vector<long>> by_prime;  // p -> prime-power orders
    for (long n : orders) {
      if (n < 1) throw std::invalid_argument("AbelianGroup: cyclic order must be positive");
      for (long p = 2; n > 1; ++p) {
        if (p * p > n) p = n;
        long q = 1;
        while (n % p == 0) {
          n /= p;
          q *= p;
        }
        if (q > 1) by_prime[p].push_back(q);
      }
    }
    std::size_t len = 0;
    for (auto& [p, v] : by_prime) {
      std::sort(v.rbegin(), v.rend());
      len = std::max(len, v.size());
    }
    std::vector<long> inv(len, 1);  // inv[0] largest
    for (const auto& [p, v] : by_prime)
      for (std::size_t i = 0; i < v.size(); ++i) inv[i] *= v[i];
    std::reverse(inv.begin(), inv.end());
    AbelianGroup g;
    g.inv_ = std::move(inv);
    return g;
  }

  const std::vector<long>& invariant_factors() const { return inv_; }
  long order() const {
    long n = 1;
    for (long a : inv_) n *= a;
    return n;
  }
  std::size_t rank() const { return inv_.size(); }
  bool is_trivial() const { return inv_.empty(); }

  AbelianGroup direct_sum(const AbelianGroup& o) const {
    std::vector<long> all = inv_;
    all.insert(all.end(), o.inv_.begin(), o.inv_.end());
    return from_cyclic(all);
  }

  /// The ell-primary component.
  AbelianGroup ell_part(long ell) const {
    std::vector<long> out;
    for (long a : inv_) {
      long q = 1;
      while (a % ell == 0) {
        a /= ell;
        q *= ell;
      }
      out.push_back(q);
    }
    return from_cyclic(out);
  }

  AbelianGroup odd_part() const {
    std::vector<long> out;
    for (long a : inv_) {
      while (a % 2 == 0) a /= 2;
      out.push_back(a);
    }
    return from_cyclic(out);
  }

  friend bool operator==(const AbelianGroup& a, const AbelianGroup& b) { return a.inv_ == b.inv_; }
  friend bool operator!=(const AbelianGroup& a, const AbelianGroup& b) { return !(a == b); }

  /// "0", "Z/nZ" or "Z/aZ x Z/bZ" with a | b.
  std::string to_string() const {
    if (inv_.empty()) return "0";
    std::string s;
    for (std::size_t i = 0; i < inv_.size(); ++i) {
      if (i) s += " x ";
      s += "Z/" + std::to_string(inv_[i]) + "Z";
    }
    return s;
  }

 private:
  std::vector<long> inv_;
};

}  // namespace twistlab
