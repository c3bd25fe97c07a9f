#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "tmlab/witness.hpp"

namespace tmlab {

inline constexpr std::size_t kDefaultMaxLen = 12;
inline constexpr std::size_t kProjectionWitnessCap = 20;

/// Explicit set of bit strings, all of length at most max_len. Membership is
/// known only on the lengths in the domain; a projection is defined on x
/// only when every word <x,y> it quantifies over lies in a known length.
class FiniteLanguage {
 public:
  FiniteLanguage() : FiniteLanguage(0) {}
  /// Domain is every length 0..max_len.
  explicit FiniteLanguage(std::size_t max_len, std::set<std::string> words = {});
  FiniteLanguage(std::size_t max_len, std::vector<bool> domain, std::set<std::string> words);

  std::size_t max_len() const { return max_len_; }
  const std::set<std::string>& words() const { return words_; }
  std::size_t size() const { return words_.size(); }
  bool defined(std::size_t length) const { return length < domain_.size() && domain_[length]; }
  const std::vector<bool>& domain() const { return domain_; }
  bool contains(const std::string& w) const { return words_.count(w) != 0; }

  /// Every word of length `len`, when `len` is defined.
  std::vector<std::string> words_of_length(std::size_t len) const;

  bool operator==(const FiniteLanguage& other) const = default;

 private:
  std::size_t max_len_;
  std::vector<bool> domain_;
  std::set<std::string> words_;
};

/// {x : exists y, |y| = w(|x|), xy in L}. The result keeps length l when
/// l + w(l) <= max_len and that length is defined in L. Throws CapExceeded
/// when some kept length needs more than `cap` witness bits.
FiniteLanguage project(const FiniteLanguage& l, const WitnessSizeFn& w,
                       std::size_t cap = kProjectionWitnessCap);

/// (L[f])[g].
FiniteLanguage project_composed(const FiniteLanguage& l, const WitnessSizeFn& f,
                                const WitnessSizeFn& g, std::size_t cap = kProjectionWitnessCap);

/// True iff (L[f])[g] equals L[n -> g(n) + f(n + g(n))], domains included.
bool composition_identity_check(const FiniteLanguage& l, const WitnessSizeFn& f,
                                const WitnessSizeFn& g, std::size_t cap = kProjectionWitnessCap);

/// All 2^len words of length len, in lexicographic order.
std::vector<std::string> all_words(std::size_t len);
/// Language of all words of exactly length `len`, with domain 0..len.
FiniteLanguage all_words_language(std::size_t len);
/// Each word of length <= max_len is included with probability `density`.
FiniteLanguage random_language(std::mt19937_64& rng, std::size_t max_len, double density);

/// One word per line, "eps" for the empty word; a blank line or EOF ends the
/// list. max_len is the longest word's length unless given.
FiniteLanguage read_language(std::istream& in, std::size_t max_len = 0);
void write_language(std::ostream& out, const FiniteLanguage& l);

}  // namespace tmlab
