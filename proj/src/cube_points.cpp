#include "au/cube_points.hpp"

#include <charconv>

#include "au/error.hpp"

namespace au::cube {

CubePoint::CubePoint(std::vector<std::uint8_t> prefix, Tail tail)
    : prefix_(std::move(prefix)), tail_(tail) {
  for (auto b : prefix_) {
    if (b > 1) raise(ErrorCode::ParseError, "prefix bits must be 0 or 1");
  }
  if (tail_ == Tail::AllZero) {
    while (!prefix_.empty() && prefix_.back() == 0) prefix_.pop_back();
  } else {
    // Dropping a single bit would shift the alternation phase, so only a
    // trailing 0,1 pair is redundant.
    while (prefix_.size() >= 2 && prefix_[prefix_.size() - 2] == 0 &&
           prefix_.back() == 1) {
      prefix_.pop_back();
      prefix_.pop_back();
    }
  }
}

int CubePoint::bit(std::uint64_t i) const {
  if (i < prefix_.size()) return prefix_[i];
  if (tail_ == Tail::AllZero) return 0;
  return static_cast<int>((i - prefix_.size()) & 1);
}

bool operator<(const CubePoint& a, const CubePoint& b) {
  if (a.tail_ != b.tail_) return a.tail_ < b.tail_;
  return a.prefix_ < b.prefix_;
}

std::string CubePoint::str() const {
  std::string s;
  s.reserve(prefix_.size() + 5);
  for (auto b : prefix_) s.push_back(char('0' + b));
  s += (tail_ == Tail::Alt01) ? "+alt" : "+zero";
  return s;
}

CubePoint CubePoint::parse(std::string_view s) {
  auto plus = s.find('+');
  if (plus == std::string_view::npos) {
    raise(ErrorCode::ParseError, "point needs a +tail tag");
  }
  std::vector<std::uint8_t> prefix;
  for (char c : s.substr(0, plus)) {
    if (c != '0' && c != '1') raise(ErrorCode::ParseError, "bad prefix bit");
    prefix.push_back(std::uint8_t(c - '0'));
  }
  std::string_view tag = s.substr(plus + 1);
  if (tag == "alt") return CubePoint(std::move(prefix), Tail::Alt01);
  if (tag == "zero") return CubePoint(std::move(prefix), Tail::AllZero);
  raise(ErrorCode::ParseError, "unknown tail tag");
}

Classified classify(const CubePoint& p) {
  if (p.tail() == Tail::Alt01) return {PointClass::InY, 0};
  if (p.prefix().empty()) return {PointClass::ZeroPoint, 0};
  // Canonical AllZero prefixes end in 1, which is the largest 1-bit.
  return {PointClass::InK, static_cast<std::uint32_t>(p.prefix().size() - 1)};
}

Box::Box(std::map<std::uint32_t, int> bits) : bits_(std::move(bits)) {
  for (auto& [i, v] : bits_) {
    (void)i;
    if (v != 0 && v != 1) throw std::invalid_argument("box bits must be 0 or 1");
  }
}

bool Box::contains(const CubePoint& p) const {
  for (auto& [i, v] : bits_) {
    if (p.bit(i) != v) return false;
  }
  return true;
}

std::optional<std::uint32_t> Box::max_index() const {
  if (bits_.empty()) return std::nullopt;
  return bits_.rbegin()->first;
}

std::string Box::str() const {
  std::string s = "{";
  bool first = true;
  for (auto& [i, v] : bits_) {
    if (!first) s += ",";
    first = false;
    s += std::to_string(i) + ":" + std::to_string(v);
  }
  return s + "}";
}

Box Box::parse(std::string_view s) {
  if (s.size() < 2 || s.front() != '{' || s.back() != '}') {
    raise(ErrorCode::ParseError, "box must be {...}");
  }
  std::map<std::uint32_t, int> bits;
  std::string_view body = s.substr(1, s.size() - 2);
  while (!body.empty()) {
    auto comma = body.find(',');
    std::string_view item = body.substr(0, comma);
    body = (comma == std::string_view::npos) ? std::string_view{}
                                             : body.substr(comma + 1);
    auto colon = item.find(':');
    if (colon == std::string_view::npos) raise(ErrorCode::ParseError, "box item needs i:b");
    std::uint32_t idx = 0;
    auto r = std::from_chars(item.data(), item.data() + colon, idx);
    if (r.ec != std::errc() || r.ptr != item.data() + colon) {
      raise(ErrorCode::ParseError, "bad box index");
    }
    std::string_view vs = item.substr(colon + 1);
    if (vs != "0" && vs != "1") raise(ErrorCode::ParseError, "bad box bit");
    bits[idx] = vs == "1" ? 1 : 0;
  }
  return Box(std::move(bits));
}

bool compatible(const Box& a, const Box& b) {
  // Walk the smaller map.
  const Box& small = a.bits().size() <= b.bits().size() ? a : b;
  const Box& large = a.bits().size() <= b.bits().size() ? b : a;
  for (auto& [i, v] : small.bits()) {
    auto it = large.bits().find(i);
    if (it != large.bits().end() && it->second != v) return false;
  }
  return true;
}

std::optional<Box> merged(const Box& a, const Box& b) {
  if (!compatible(a, b)) return std::nullopt;
  auto bits = a.bits();
  bits.insert(b.bits().begin(), b.bits().end());
  return Box(std::move(bits));
}

CubePoint dense_extend(const Box& b) {
  std::vector<std::uint8_t> prefix;
  if (auto mx = b.max_index()) {
    prefix.assign(*mx + 1, 0);
    for (auto& [i, v] : b.bits()) prefix[i] = std::uint8_t(v);
  }
  return CubePoint(std::move(prefix), Tail::Alt01);
}

}  // namespace au::cube
