#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "wp/errors.hpp"

namespace wp {

// A permutation of {0..degree-1}, stored as its full image array.
// Composition is function composition: (a*b)(p) = a(b(p)).
class Permutation {
 public:
  explicit Permutation(std::vector<int> images);

  static Permutation identity(int degree);
  // Parse cycle notation, e.g. "(0 1 2 3 4)(5 6)"; commas also accepted.
  static Permutation from_cycles(const std::string& text, int degree);

  int degree() const { return (int)img_.size(); }
  int operator()(int p) const { return img_[(size_t)p]; }
  const std::vector<int>& images() const { return img_; }

  Permutation operator*(const Permutation& rhs) const;
  Permutation inverse() const;
  Permutation conjugated_by(const Permutation& g) const;  // g * this * g^-1

  bool is_identity() const;
  bool operator==(const Permutation& rhs) const { return img_ == rhs.img_; }
  bool operator!=(const Permutation& rhs) const { return img_ != rhs.img_; }
  bool operator<(const Permutation& rhs) const { return img_ < rhs.img_; }

  // Smallest moved point, or -1 for the identity.
  int first_moved() const;

  std::string to_cycles() const;

 private:
  std::vector<int> img_;
};

struct PermHash {
  std::size_t operator()(const Permutation& p) const {
    std::size_t h = 1469598103934665603ULL;
    for (int v : p.images()) {
      h ^= (std::size_t)v;
      h *= 1099511628211ULL;
    }
    return h;
  }
};

}  // namespace wp
