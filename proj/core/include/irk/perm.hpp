#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace irk {

// Points are 0-based internally; all file formats and display are 1-based.
using Point = unsigned;

class Perm {
 public:
  Perm() = default;
  explicit Perm(unsigned degree);  // identity

  static Perm identity(unsigned degree);
  // Validates that `images` is a bijection of {0..n-1}.
  static Perm from_images(std::vector<std::uint8_t> images);
  // Cycles use 0-based points; points absent from every cycle are fixed.
  static Perm from_cycles(unsigned degree,
                          const std::vector<std::vector<Point>>& cycles);

  unsigned degree() const { return static_cast<unsigned>(img_.size()); }
  Point operator()(Point x) const { return img_[x]; }
  const std::vector<std::uint8_t>& images() const { return img_; }

  bool is_identity() const;
  Perm inverse() const;

  bool operator==(const Perm&) const = default;
  // Lexicographic order on image sequences; the global element order.
  bool operator<(const Perm& o) const { return img_ < o.img_; }

  std::size_t hash() const;

 private:
  std::vector<std::uint8_t> img_;
};

// (p∘q)(x) = p(q(x)): right factor applied first.
Perm compose(const Perm& p, const Perm& q);
// s∘p∘s⁻¹.
Perm conjugate(const Perm& p, const Perm& s);

struct CycleDecomposition {
  unsigned degree = 0;
  // Canonical: each cycle starts at its minimum point, cycles sorted by
  // that minimum, fixed points omitted.
  std::vector<std::vector<Point>> cycles;
};

CycleDecomposition cycle_decomposition(const Perm& p);
Perm from_cycles(const CycleDecomposition& cd);

enum class Parity { even, odd };
Parity parity(const Perm& p);
inline Parity parity_xor(Parity a, Parity b) {
  return a == b ? Parity::even : Parity::odd;
}

// d(x) = sum of (length-1) over cycles = n - #cycles counting fixed points.
unsigned displacement(const Perm& p);

// Order of p as a group element (lcm of cycle lengths).
std::uint64_t element_order(const Perm& p);

// "(1 2)(3 4 5)" — 1-based cycle notation; "()" or "e" is the identity.
Perm parse_cycle_string(const std::string& text, unsigned degree);
std::string to_cycle_string(const Perm& p);

struct PermHash {
  std::size_t operator()(const Perm& p) const { return p.hash(); }
};

}  // namespace irk
