#include "irk/perm.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "irk/error.hpp"

namespace irk {

Perm::Perm(unsigned degree) : img_(degree) {
  std::iota(img_.begin(), img_.end(), std::uint8_t{0});
}

Perm Perm::identity(unsigned degree) { return Perm(degree); }

Perm Perm::from_images(std::vector<std::uint8_t> images) {
  const auto n = images.size();
  if (n > 255) fail(ErrorCode::cap_exceeded, "degree > 255");
  std::vector<bool> seen(n, false);
  for (auto v : images) {
    if (v >= n || seen[v])
      fail(ErrorCode::usage, "images are not a bijection of {1..n}");
    seen[v] = true;
  }
  Perm p;
  p.img_ = std::move(images);
  return p;
}

Perm Perm::from_cycles(unsigned degree,
                       const std::vector<std::vector<Point>>& cycles) {
  Perm p(degree);
  std::vector<bool> used(degree, false);
  for (const auto& cyc : cycles) {
    for (std::size_t i = 0; i < cyc.size(); ++i) {
      Point x = cyc[i];
      Point y = cyc[(i + 1) % cyc.size()];
      if (x >= degree || y >= degree)
        fail(ErrorCode::usage, "cycle point out of range");
      if (used[x]) fail(ErrorCode::usage, "cycles are not disjoint");
      used[x] = true;
      p.img_[x] = static_cast<std::uint8_t>(y);
    }
  }
  return p;
}

bool Perm::is_identity() const {
  for (unsigned i = 0; i < degree(); ++i)
    if (img_[i] != i) return false;
  return true;
}

Perm Perm::inverse() const {
  Perm q;
  q.img_.resize(img_.size());
  for (unsigned i = 0; i < degree(); ++i) q.img_[img_[i]] = static_cast<std::uint8_t>(i);
  return q;
}

std::size_t Perm::hash() const {
  // FNV-1a over the image bytes.
  std::size_t h = 1469598103934665603ull;
  for (auto b : img_) {
    h ^= b;
    h *= 1099511628211ull;
  }
  return h;
}

Perm compose(const Perm& p, const Perm& q) {
  if (p.degree() != q.degree())
    fail(ErrorCode::usage, "compose: degree mismatch");
  Perm r;
  std::vector<std::uint8_t> img(p.degree());
  for (unsigned x = 0; x < p.degree(); ++x) img[x] = p(q(x));
  return Perm::from_images(std::move(img));
}

Perm conjugate(const Perm& p, const Perm& s) {
  if (p.degree() != s.degree())
    fail(ErrorCode::usage, "conjugate: degree mismatch");
  // (s∘p∘s⁻¹)(s(x)) = s(p(x))
  std::vector<std::uint8_t> img(p.degree());
  for (unsigned x = 0; x < p.degree(); ++x) img[s(x)] = s(p(x));
  return Perm::from_images(std::move(img));
}

CycleDecomposition cycle_decomposition(const Perm& p) {
  CycleDecomposition cd;
  cd.degree = p.degree();
  std::vector<bool> seen(p.degree(), false);
  for (unsigned start = 0; start < p.degree(); ++start) {
    if (seen[start] || p(start) == start) continue;
    std::vector<Point> cyc;
    Point x = start;
    do {
      seen[x] = true;
      cyc.push_back(x);
      x = p(x);
    } while (x != start);
    cd.cycles.push_back(std::move(cyc));
  }
  return cd;  // starts are increasing minima, so already canonical
}

Perm from_cycles(const CycleDecomposition& cd) {
  return Perm::from_cycles(cd.degree, cd.cycles);
}

Parity parity(const Perm& p) {
  return displacement(p) % 2 == 0 ? Parity::even : Parity::odd;
}

unsigned displacement(const Perm& p) {
  unsigned cycles = 0;
  std::vector<bool> seen(p.degree(), false);
  for (unsigned start = 0; start < p.degree(); ++start) {
    if (seen[start]) continue;
    ++cycles;
    Point x = start;
    do {
      seen[x] = true;
      x = p(x);
    } while (x != start);
  }
  return p.degree() - cycles;
}

std::uint64_t element_order(const Perm& p) {
  std::uint64_t ord = 1;
  for (const auto& cyc : cycle_decomposition(p).cycles)
    ord = std::lcm<std::uint64_t>(ord, cyc.size());
  return ord;
}

Perm parse_cycle_string(const std::string& text, unsigned degree) {
  std::vector<std::vector<Point>> cycles;
  std::size_t i = 0;
  auto skip_ws = [&] {
    while (i < text.size() && (text[i] == ' ' || text[i] == '\t')) ++i;
  };
  skip_ws();
  if (i < text.size() && (text[i] == 'e' || text[i] == '1') &&
      text.find('(') == std::string::npos) {
    return Perm::identity(degree);
  }
  while (i < text.size()) {
    skip_ws();
    if (i >= text.size()) break;
    if (text[i] != '(') fail(ErrorCode::usage, "expected '(' in cycle string");
    ++i;
    std::vector<Point> cyc;
    while (true) {
      skip_ws();
      if (i < text.size() && text[i] == ')') {
        ++i;
        break;
      }
      std::size_t j = i;
      while (j < text.size() && isdigit(static_cast<unsigned char>(text[j]))) ++j;
      if (j == i) fail(ErrorCode::usage, "expected point in cycle string");
      unsigned v = std::stoul(text.substr(i, j - i));
      if (v == 0 || v > degree)
        fail(ErrorCode::usage, "cycle point out of 1..n range");
      cyc.push_back(v - 1);
      i = j;
      skip_ws();
      if (i < text.size() && (text[i] == ',')) ++i;
    }
    if (cyc.size() >= 2) cycles.push_back(std::move(cyc));
  }
  return Perm::from_cycles(degree, cycles);
}

std::string to_cycle_string(const Perm& p) {
  auto cd = cycle_decomposition(p);
  if (cd.cycles.empty()) return "()";
  std::ostringstream os;
  for (const auto& cyc : cd.cycles) {
    os << '(';
    for (std::size_t i = 0; i < cyc.size(); ++i) {
      if (i) os << ' ';
      os << cyc[i] + 1;
    }
    os << ')';
  }
  return os.str();
}

}  // namespace irk
