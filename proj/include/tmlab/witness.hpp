#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <string>

namespace tmlab {

/// Witness-size function w: N -> N. Library kinds carry a textual form that
/// round-trips through `parse`; custom and composed functions do not.
class WitnessSizeFn {
 public:
  static WitnessSizeFn constant(std::size_t c);
  /// floor(num * n / den) + offset
  static WitnessSizeFn affine(std::size_t num, std::size_t den, std::size_t offset);
  static WitnessSizeFn identity() { return affine(1, 1, 0); }
  /// floor(lg n) + offset, with lg 0 taken as 0.
  static WitnessSizeFn floor_lg(std::size_t offset = 0);
  /// ceil(lg n) + offset, with lg 0 taken as 0.
  static WitnessSizeFn ceil_lg(std::size_t offset = 0);
  static WitnessSizeFn custom(std::string label, std::function<std::size_t(std::size_t)> fn);
  /// n -> g(n) + f(n + g(n)): the single projection equal to projecting by f, then by g.
  static WitnessSizeFn composed(const WitnessSizeFn& f, const WitnessSizeFn& g);

  /// Parses "const C", "affine A B C", "floor_lg C" or "ceil_lg C".
  static WitnessSizeFn parse(const std::string& text);

  std::size_t operator()(std::size_t n) const { return fn_(n); }
  const std::string& description() const { return description_; }
  /// Text accepted by `parse`, when this is a library kind.
  const std::optional<std::string>& serialized() const { return serialized_; }

  /// Value equality on every length in [0, up_to].
  bool agrees_with(const WitnessSizeFn& other, std::size_t up_to) const;

 private:
  WitnessSizeFn(std::string description, std::optional<std::string> serialized,
                std::function<std::size_t(std::size_t)> fn);

  std::string description_;
  std::optional<std::string> serialized_;
  std::function<std::size_t(std::size_t)> fn_;
};

std::size_t floor_log2(std::size_t n);
std::size_t ceil_log2(std::size_t n);

}  // namespace tmlab
