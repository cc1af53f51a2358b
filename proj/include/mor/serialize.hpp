#pragma once

#include <bit>
#include <cstdint>
#include <cstring>
#include <stdexcept>
#include <string>
#include <vector>

// Canonical byte layout used for every hashed or persisted structure:
// fixed field order, little-endian integers, IEEE-754 doubles as
// little-endian u64, variable fields length-prefixed with u64.

namespace mor {

class ByteWriter {
 public:
  void u8(std::uint8_t v) { buf_.push_back(v); }
  void u32(std::uint32_t v) {
    for (int i = 0; i < 4; ++i) buf_.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
  }
  void u64(std::uint64_t v) {
    for (int i = 0; i < 8; ++i) buf_.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
  }
  void i32(std::int32_t v) { u32(static_cast<std::uint32_t>(v)); }
  void f64(double v) { u64(std::bit_cast<std::uint64_t>(v)); }
  void bytes(const std::uint8_t* p, std::size_t n) { buf_.insert(buf_.end(), p, p + n); }
  void str(const std::string& s) {
    u64(s.size());
    bytes(reinterpret_cast<const std::uint8_t*>(s.data()), s.size());
  }
  void f64_array(const double* p, std::size_t n) {
    u64(n);
    for (std::size_t i = 0; i < n; ++i) f64(p[i]);
  }
  void i32_array(const std::int32_t* p, std::size_t n) {
    u64(n);
    for (std::size_t i = 0; i < n; ++i) i32(p[i]);
  }

  const std::vector<std::uint8_t>& data() const { return buf_; }
  std::vector<std::uint8_t> take() { return std::move(buf_); }

 private:
  std::vector<std::uint8_t> buf_;
};

class ByteReader {
 public:
  ByteReader(const std::uint8_t* p, std::size_t n) : p_(p), end_(p + n) {}
  explicit ByteReader(const std::vector<std::uint8_t>& v) : ByteReader(v.data(), v.size()) {}

  std::uint8_t u8() { return *need(1); }
  std::uint32_t u32() {
    const std::uint8_t* p = need(4);
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(p[i]) << (8 * i);
    return v;
  }
  std::uint64_t u64() {
    const std::uint8_t* p = need(8);
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(p[i]) << (8 * i);
    return v;
  }
  std::int32_t i32() { return static_cast<std::int32_t>(u32()); }
  double f64() { return std::bit_cast<double>(u64()); }
  std::string str() {
    std::uint64_t n = u64();
    const std::uint8_t* p = need(n);
    return std::string(reinterpret_cast<const char*>(p), n);
  }
  std::vector<double> f64_array() {
    std::uint64_t n = u64();
    std::vector<double> out(n);
    for (auto& v : out) v = f64();
    return out;
  }
  std::vector<std::int32_t> i32_array() {
    std::uint64_t n = u64();
    std::vector<std::int32_t> out(n);
    for (auto& v : out) v = i32();
    return out;
  }
  void raw(std::uint8_t* dst, std::size_t n) { std::memcpy(dst, need(n), n); }
  std::size_t remaining() const { return static_cast<std::size_t>(end_ - p_); }
  bool done() const { return p_ == end_; }

 private:
  const std::uint8_t* need(std::size_t n) {
    if (remaining() < n) throw std::runtime_error("byte reader: truncated input");
    const std::uint8_t* p = p_;
    p_ += n;
    return p;
  }
  const std::uint8_t* p_;
  const std::uint8_t* end_;
};

}  // namespace mor
