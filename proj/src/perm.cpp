#include "wp/perm.hpp"

#include <algorithm>
#include <sstream>

namespace wp {

Permutation::Permutation(std::vector<int> images) : img_(std::move(images)) {
  std::vector<char> seen(img_.size(), 0);
  for (int v : img_) {
    require_input(v >= 0 && v < (int)img_.size(), "permutation image out of range");
    require_input(!seen[(size_t)v], "permutation image array is not a bijection");
    seen[(size_t)v] = 1;
  }
}

Permutation Permutation::identity(int degree) {
  std::vector<int> img((size_t)degree);
  for (int i = 0; i < degree; ++i) img[(size_t)i] = i;
  return Permutation(std::move(img));
}

Permutation Permutation::from_cycles(const std::string& text, int degree) {
  std::vector<int> img((size_t)degree);
  for (int i = 0; i < degree; ++i) img[(size_t)i] = i;
  std::vector<char> used((size_t)degree, 0);
  size_t i = 0;
  auto skip_ws = [&] {
    while (i < text.size() && (text[i] == ' ' || text[i] == ',' || text[i] == '\t')) ++i;
  };
  skip_ws();
  while (i < text.size()) {
    require_input(text[i] == '(', "cycle notation: expected '('");
    ++i;
    std::vector<int> cyc;
    for (;;) {
      skip_ws();
      if (i < text.size() && text[i] == ')') {
        ++i;
        break;
      }
      require_input(i < text.size() && isdigit((unsigned char)text[i]),
                    "cycle notation: expected point or ')'");
      int v = 0;
      while (i < text.size() && isdigit((unsigned char)text[i])) v = v * 10 + (text[i++] - '0');
      require_input(v < degree, "cycle notation: point exceeds degree");
      require_input(!used[(size_t)v], "cycle notation: repeated point");
      used[(size_t)v] = 1;
      cyc.push_back(v);
    }
    for (size_t j = 0; j < cyc.size(); ++j)
      img[(size_t)cyc[j]] = cyc[(j + 1) % cyc.size()];
    skip_ws();
  }
  return Permutation(std::move(img));
}

Permutation Permutation::operator*(const Permutation& rhs) const {
  require_input(degree() == rhs.degree(), "degree mismatch in composition");
  std::vector<int> img(img_.size());
  for (size_t p = 0; p < img_.size(); ++p) img[p] = img_[(size_t)rhs.img_[p]];
  return Permutation(std::move(img));
}

Permutation Permutation::inverse() const {
  std::vector<int> img(img_.size());
  for (size_t p = 0; p < img_.size(); ++p) img[(size_t)img_[p]] = (int)p;
  return Permutation(std::move(img));
}

Permutation Permutation::conjugated_by(const Permutation& g) const {
  // g * this * g^-1 : p -> g(this(g^-1(p)))
  std::vector<int> img(img_.size());
  for (size_t p = 0; p < img_.size(); ++p)
    img[(size_t)g.img_[p]] = g.img_[(size_t)img_[p]];
  return Permutation(std::move(img));
}

bool Permutation::is_identity() const {
  for (size_t p = 0; p < img_.size(); ++p)
    if (img_[p] != (int)p) return false;
  return true;
}

int Permutation::first_moved() const {
  for (size_t p = 0; p < img_.size(); ++p)
    if (img_[p] != (int)p) return (int)p;
  return -1;
}

std::string Permutation::to_cycles() const {
  std::ostringstream out;
  std::vector<char> seen(img_.size(), 0);
  bool any = false;
  for (size_t p = 0; p < img_.size(); ++p) {
    if (seen[p] || img_[p] == (int)p) continue;
    out << '(';
    size_t q = p;
    bool first = true;
    while (!seen[q]) {
      seen[q] = 1;
      if (!first) out << ' ';
      out << q;
      first = false;
      q = (size_t)img_[q];
    }
    out << ')';
    any = true;
  }
  return any ? out.str() : "()";
}

}  // namespace wp
