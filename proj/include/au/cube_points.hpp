#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace au::cube {

// A point of the binary cube 2^omega given by a finite prefix and a
// periodic tail. Alt01 follows the prefix with 0,1,0,1,...; AllZero with
// all zeros. Construction canonicalizes to the shortest prefix producing
// the same bit sequence, so operator== decides extensional equality.
enum class Tail : std::uint8_t { AllZero, Alt01 };

class CubePoint {
 public:
  CubePoint() = default;  // the all-zero point
  CubePoint(std::vector<std::uint8_t> prefix, Tail tail);

  int bit(std::uint64_t i) const;

  Tail tail() const { return tail_; }
  const std::vector<std::uint8_t>& prefix() const { return prefix_; }

  friend bool operator==(const CubePoint&, const CubePoint&) = default;
  friend bool operator<(const CubePoint& a, const CubePoint& b);

  std::string str() const;                      // "10+alt", "001+zero", "+alt"
  static CubePoint parse(std::string_view s);   // Error(ParseError)

 private:
  std::vector<std::uint8_t> prefix_;
  Tail tail_ = Tail::AllZero;
};

enum class PointClass : std::uint8_t { InY, InK, ZeroPoint };

struct Classified {
  PointClass cls;
  std::uint32_t k_index = 0;  // meaningful only when cls == InK
};

Classified classify(const CubePoint& p);

// Finite partial assignment of bits; denotes the clopen box of all points
// matching it. Empty domain denotes the whole cube.
class Box {
 public:
  Box() = default;
  explicit Box(std::map<std::uint32_t, int> bits);

  bool contains(const CubePoint& p) const;
  const std::map<std::uint32_t, int>& bits() const { return bits_; }
  bool empty_domain() const { return bits_.empty(); }
  std::optional<std::uint32_t> max_index() const;

  friend bool operator==(const Box&, const Box&) = default;
  friend bool operator<(const Box& a, const Box& b) { return a.bits_ < b.bits_; }

  std::string str() const;                   // "{0:1,3:0}", "{}"
  static Box parse(std::string_view s);      // Error(ParseError)

 private:
  std::map<std::uint32_t, int> bits_;
};

// True iff the boxes agree on every shared index; then their denotations
// intersect and merged() yields the box denoting that intersection.
bool compatible(const Box& a, const Box& b);
std::optional<Box> merged(const Box& a, const Box& b);

// The canonical dense witness inside a box: unassigned prefix bits become 0
// and the tail alternates, so the result always classifies InY.
CubePoint dense_extend(const Box& b);

}  // namespace au::cube
