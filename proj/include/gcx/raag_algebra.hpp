#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gcx/partitions.hpp"

namespace gcx {

// A word in the generators: sequence of signed vertex indices.
using Word = std::vector<int>;

Word inverse_word(const Word& w);
Word concat(const Word& a, const Word& b);

// Shuffle-reduced canonical form: free/commuting cancellation to a geodesic,
// then the lexicographically least word in the shuffle class (greedy
// extraction of the least front-movable letter).
Word normalize(const SimplicialGraph& g, Word w);
bool words_equal(const SimplicialGraph& g, const Word& a, const Word& b);

std::string word_to_string(const SimplicialGraph& g, const Word& w);
Word word_from_string(const SimplicialGraph& g, const std::string& s);

// All normal forms of length <= radius, by length then lex order.
std::vector<Word> normal_forms_up_to(const SimplicialGraph& g, int radius);

// An automorphism of A_Γ given by generator images, always carried together
// with its inverse. Constructors for the U⁰ generators build the inverse
// symbolically; external maps must supply one.
class RaagAutomorphism {
public:
  RaagAutomorphism() = default;  // identity on an empty graph; use make_*

  static RaagAutomorphism identity(const SimplicialGraph& g);
  // Validates that the two maps compose to the identity both ways.
  static RaagAutomorphism from_images(const SimplicialGraph& g,
                                      std::vector<Word> images,
                                      std::vector<Word> inverse_images);

  const SimplicialGraph& graph() const { return g_; }
  const Word& image(int v) const { return images_[v]; }
  const std::vector<Word>& images() const { return images_; }
  const std::vector<Word>& inverse_images() const { return inverse_images_; }

  Word apply(const Word& w) const;
  Word apply_inverse(const Word& w) const;

  bool is_identity() const;
  bool operator==(const RaagAutomorphism& o) const {
    return images_ == o.images_;
  }
  bool operator<(const RaagAutomorphism& o) const {
    return images_ < o.images_;
  }

private:
  SimplicialGraph g_;  // held by value; automorphisms outlive caller graphs
  std::vector<Word> images_;          // normalized
  std::vector<Word> inverse_images_;  // normalized
};

// compose(a, b): apply b first, then a.
RaagAutomorphism compose(const RaagAutomorphism& a, const RaagAutomorphism& b);
RaagAutomorphism inverse(const RaagAutomorphism& a);
RaagAutomorphism inner_automorphism(const SimplicialGraph& g, const Word& c);

// v -> v^-1, all else fixed.
RaagAutomorphism inversion(const SimplicialGraph& g, int v);

// Folds move x over the signed base y: Right: x -> x·y^-1, Left: x -> y·x.
// Requires lk(x) ⊆ lk(y).
enum class FoldSide { Right, Left };
RaagAutomorphism fold(const SimplicialGraph& g, int x, int y_signed,
                      FoldSide side);

// w -> x w x^-1 for w in c; c must be a union of components of Γ∖st(x).
RaagAutomorphism partial_conjugation(const SimplicialGraph& g, int x_signed,
                                     VSet c);

// φ(P, x) for a signed base x of p, per the three-case rule.
RaagAutomorphism whitehead_automorphism(const SimplicialGraph& g,
                                        const WhiteheadPartition& p,
                                        int x_signed);

// Integer abelianization matrix, rows = generator images.
std::vector<std::vector<long long>> abelianization(const RaagAutomorphism& a);

struct OuterWitness {
  Word conjugator;
};

// Searches conjugators c with |c| <= radius such that a == inner(c).
// Absence does not prove a is not inner.
std::optional<OuterWitness> is_inner_bounded(const SimplicialGraph& g,
                                             const RaagAutomorphism& a,
                                             int radius);
// Witness c with a == compose(inner(c), b), same bounded caveat.
std::optional<OuterWitness> outer_equal_bounded(const SimplicialGraph& g,
                                                const RaagAutomorphism& a,
                                                const RaagAutomorphism& b,
                                                int radius);

// Tagged U⁰ generators, the inputs restrict_generator accepts.
struct TaggedGenerator {
  enum class Kind { Inversion, Fold, PartialConjugation, Whitehead };
  Kind kind;
  // Inversion: v. Fold: x moved over y_signed, side. PartialConjugation:
  // x_signed, component set c. Whitehead: partition + signed base.
  int v = -1;
  int x = -1;
  int y_signed = -1;
  FoldSide side = FoldSide::Right;
  VSet c = 0;
  WhiteheadPartition partition;
  int base_signed = -1;

  RaagAutomorphism realize(const SimplicialGraph& g) const;
};

// Factors a Whitehead automorphism into folds and partial conjugations.
std::vector<TaggedGenerator> factor_whitehead(const SimplicialGraph& g,
                                              const WhiteheadPartition& p,
                                              int x_signed);

}  // namespace gcx
