#include "gcx/raag_algebra.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace gcx {

Word inverse_word(const Word& w) {
  Word out(w.rbegin(), w.rend());
  for (int& s : out) s = sv_inverse(s);
  return out;
}

Word concat(const Word& a, const Word& b) {
  Word out = a;
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

namespace {

bool letters_commute(const SimplicialGraph& g, int a, int b) {
  int u = sv_vertex(a), v = sv_vertex(b);
  return u == v || g.adjacent(u, v);
}

// Removes one cancelling pair whose members can be shuffled together.
bool cancel_once(const SimplicialGraph& g, Word& w) {
  for (std::size_t i = 0; i < w.size(); ++i) {
    for (std::size_t j = i + 1; j < w.size(); ++j) {
      if (w[j] == sv_inverse(w[i])) {
        bool clear = true;
        for (std::size_t k = i + 1; k < j; ++k)
          if (!letters_commute(g, w[k], w[i])) {
            clear = false;
            break;
          }
        if (clear) {
          w.erase(w.begin() + j);
          w.erase(w.begin() + i);
          return true;
        }
      }
      if (!letters_commute(g, w[j], w[i])) break;
    }
  }
  return false;
}

}  // namespace

Word normalize(const SimplicialGraph& g, Word w) {
  for (int s : w)
    require(s >= 0 && sv_vertex(s) < g.n(), "word letter outside graph");
  while (cancel_once(g, w)) {
  }
  // Greedy lexicographic extraction over the shuffle class.
  Word out;
  out.reserve(w.size());
  while (!w.empty()) {
    std::size_t best = 0;
    bool found = false;
    for (std::size_t i = 0; i < w.size(); ++i) {
      bool movable = true;
      for (std::size_t k = 0; k < i; ++k)
        if (!letters_commute(g, w[k], w[i])) {
          movable = false;
          break;
        }
      if (movable && (!found || w[i] < w[best])) {
        best = i;
        found = true;
      }
    }
    out.push_back(w[best]);
    w.erase(w.begin() + best);
  }
  return out;
}

bool words_equal(const SimplicialGraph& g, const Word& a, const Word& b) {
  return normalize(g, a) == normalize(g, b);
}

std::string word_to_string(const SimplicialGraph& g, const Word& w) {
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) out += ' ';
    out += signed_name(g, w[i]);
  }
  return out;
}

Word word_from_string(const SimplicialGraph& g, const std::string& s) {
  Word out;
  std::istringstream is(s);
  std::string tok;
  while (is >> tok) {
    bool neg = false;
    if (tok.size() > 3 && tok.substr(tok.size() - 3) == "^-1") {
      neg = true;
      tok = tok.substr(0, tok.size() - 3);
    }
    out.push_back(sv(g.index(tok), neg));
  }
  return out;
}

std::vector<Word> normal_forms_up_to(const SimplicialGraph& g, int radius) {
  std::vector<Word> out{{}};
  std::vector<Word> layer{{}};
  for (int len = 1; len <= radius; ++len) {
    std::set<Word> next;
    for (const Word& w : layer) {
      for (int s = 0; s < 2 * g.n(); ++s) {
        Word cand = w;
        cand.push_back(s);
        Word nf = normalize(g, cand);
        if (static_cast<int>(nf.size()) == len) next.insert(nf);
      }
    }
    layer.assign(next.begin(), next.end());
    out.insert(out.end(), layer.begin(), layer.end());
  }
  return out;
}

RaagAutomorphism RaagAutomorphism::identity(const SimplicialGraph& g) {
  std::vector<Word> im(g.n());
  for (int v = 0; v < g.n(); ++v) im[v] = {sv(v, false)};
  return from_images(g, im, im);
}

RaagAutomorphism RaagAutomorphism::from_images(const SimplicialGraph& g,
                                               std::vector<Word> images,
                                               std::vector<Word> inverse_images) {
  require(static_cast<int>(images.size()) == g.n() &&
              static_cast<int>(inverse_images.size()) == g.n(),
          "automorphism needs one image per generator");
  RaagAutomorphism a;
  a.g_ = g;
  for (auto& w : images) w = normalize(g, w);
  for (auto& w : inverse_images) w = normalize(g, w);
  a.images_ = std::move(images);
  a.inverse_images_ = std::move(inverse_images);
  // Two-sided inverse check on every generator.
  for (int v = 0; v < g.n(); ++v) {
    Word gen{sv(v, false)};
    if (normalize(g, a.apply(a.apply_inverse(gen))) != gen ||
        normalize(g, a.apply_inverse(a.apply(gen))) != gen)
      fail("map is not invertible: supplied inverse fails on generator " +
           g.name(v));
  }
  // Images of adjacent generators must commute.
  for (auto [u, v] : g.edge_list()) {
    Word uv = concat(a.images_[u], a.images_[v]);
    Word vu = concat(a.images_[v], a.images_[u]);
    if (normalize(g, uv) != normalize(g, vu))
      fail("images of adjacent generators " + g.name(u) + ", " + g.name(v) +
           " do not commute");
  }
  return a;
}

namespace {
Word substitute(const std::vector<Word>& images, const Word& w) {
  Word out;
  for (int s : w) {
    const Word& im = images[sv_vertex(s)];
    if (!sv_negative(s))
      out.insert(out.end(), im.begin(), im.end());
    else {
      Word inv = inverse_word(im);
      out.insert(out.end(), inv.begin(), inv.end());
    }
  }
  return out;
}
}  // namespace

Word RaagAutomorphism::apply(const Word& w) const {
  return normalize(g_, substitute(images_, w));
}

Word RaagAutomorphism::apply_inverse(const Word& w) const {
  return normalize(g_, substitute(inverse_images_, w));
}

bool RaagAutomorphism::is_identity() const {
  for (int v = 0; v < graph().n(); ++v)
    if (images_[v] != Word{sv(v, false)}) return false;
  return true;
}

RaagAutomorphism compose(const RaagAutomorphism& a, const RaagAutomorphism& b) {
  require(&a.graph() == &b.graph() || a.graph() == b.graph(),
          "compose: mismatched ambient graphs");
  const SimplicialGraph& g = a.graph();
  std::vector<Word> im(g.n()), inv(g.n());
  for (int v = 0; v < g.n(); ++v) {
    im[v] = a.apply(b.image(v));
    inv[v] = b.apply_inverse(a.inverse_images()[v]);
  }
  return RaagAutomorphism::from_images(g, im, inv);
}

RaagAutomorphism inverse(const RaagAutomorphism& a) {
  return RaagAutomorphism::from_images(a.graph(), a.inverse_images(),
                                       a.images());
}

RaagAutomorphism inner_automorphism(const SimplicialGraph& g, const Word& c) {
  Word ci = inverse_word(c);
  std::vector<Word> im(g.n()), inv(g.n());
  for (int v = 0; v < g.n(); ++v) {
    Word gen{sv(v, false)};
    im[v] = concat(c, concat(gen, ci));
    inv[v] = concat(ci, concat(gen, c));
  }
  return RaagAutomorphism::from_images(g, im, inv);
}

RaagAutomorphism inversion(const SimplicialGraph& g, int v) {
  require(v >= 0 && v < g.n(), "unknown vertex index");
  std::vector<Word> im(g.n());
  for (int w = 0; w < g.n(); ++w) im[w] = {sv(w, w == v)};
  return RaagAutomorphism::from_images(g, im, im);
}

RaagAutomorphism fold(const SimplicialGraph& g, int x, int y_signed,
                      FoldSide side) {
  require(x >= 0 && x < g.n(), "unknown vertex index");
  int y = sv_vertex(y_signed);
  require(x != y, "fold cannot move a vertex over itself");
  require((link(g, x) & ~link(g, y)) == 0,
          "fold requires lk(" + g.name(x) + ") ⊆ lk(" + g.name(y) + ")");
  std::vector<Word> im(g.n()), inv(g.n());
  for (int w = 0; w < g.n(); ++w) {
    im[w] = {sv(w, false)};
    inv[w] = {sv(w, false)};
  }
  int ys = y_signed, yi = sv_inverse(y_signed);
  if (side == FoldSide::Right) {
    im[x] = {sv(x, false), yi};
    inv[x] = {sv(x, false), ys};
  } else {
    im[x] = {ys, sv(x, false)};
    inv[x] = {yi, sv(x, false)};
  }
  return RaagAutomorphism::from_images(g, im, inv);
}

RaagAutomorphism partial_conjugation(const SimplicialGraph& g, int x_signed,
                                     VSet c) {
  int x = sv_vertex(x_signed);
  auto comps = components(g, g.all_vertices() & ~star(g, x));
  VSet left = c;
  for (VSet comp : comps) {
    if (comp & c) {
      require((comp & ~c) == 0,
              "partial conjugation: set is not a union of components of Γ∖st(" +
                  g.name(x) + ")");
      left &= ~comp;
    }
  }
  require(left == 0,
          "partial conjugation: set leaves Γ∖st(" + g.name(x) + ")");
  std::vector<Word> im(g.n()), inv(g.n());
  int xs = x_signed, xi = sv_inverse(x_signed);
  for (int w = 0; w < g.n(); ++w) {
    if ((c >> w) & 1) {
      im[w] = {xs, sv(w, false), xi};
      inv[w] = {xi, sv(w, false), xs};
    } else {
      im[w] = {sv(w, false)};
      inv[w] = {sv(w, false)};
    }
  }
  return RaagAutomorphism::from_images(g, im, inv);
}

RaagAutomorphism whitehead_automorphism(const SimplicialGraph& g,
                                        const WhiteheadPartition& p,
                                        int x_signed) {
  validate_partition(g, p, /*allow_singleton=*/true);
  int x = sv_vertex(x_signed);
  require(((p.bases(g) >> x) & 1) != 0,
          "vertex " + g.name(x) + " is not a base of the partition");
  int side_of_base = p.side_of(x_signed);
  require(side_of_base >= 0, "base is not in a side");
  SSet pi = p.side(side_of_base);
  int xs = x_signed, xi = sv_inverse(x_signed);
  std::vector<Word> im(g.n()), inv(g.n());
  for (int yv = 0; yv < g.n(); ++yv) {
    int yp = sv(yv, false), yn = sv(yv, true);
    im[yv] = {yp};
    inv[yv] = {yp};
    if (yv == x) continue;
    bool y_in = (pi >> yp) & 1, yi_in = (pi >> yn) & 1;
    if (y_in && yi_in) {
      im[yv] = {xs, yp, xi};
      inv[yv] = {xi, yp, xs};
    } else if (y_in) {
      im[yv] = {yp, xi};
      inv[yv] = {yp, xs};
    } else if (yi_in) {
      im[yv] = {xs, yp};
      inv[yv] = {xi, yp};
    }
  }
  return RaagAutomorphism::from_images(g, im, inv);
}

std::vector<std::vector<long long>> abelianization(const RaagAutomorphism& a) {
  int n = a.graph().n();
  std::vector<std::vector<long long>> m(n, std::vector<long long>(n, 0));
  for (int v = 0; v < n; ++v)
    for (int s : a.image(v)) m[v][sv_vertex(s)] += sv_negative(s) ? -1 : 1;
  return m;
}

std::optional<OuterWitness> is_inner_bounded(const SimplicialGraph& g,
                                             const RaagAutomorphism& a,
                                             int radius) {
  require(radius >= 0, "radius must be nonnegative");
  for (const Word& c : normal_forms_up_to(g, radius)) {
    bool match = true;
    Word ci = inverse_word(c);
    for (int v = 0; v < g.n() && match; ++v) {
      Word gen{sv(v, false)};
      if (a.image(v) != normalize(g, concat(c, concat(gen, ci)))) match = false;
    }
    if (match) return OuterWitness{c};
  }
  return std::nullopt;
}

std::optional<OuterWitness> outer_equal_bounded(const SimplicialGraph& g,
                                                const RaagAutomorphism& a,
                                                const RaagAutomorphism& b,
                                                int radius) {
  return is_inner_bounded(g, compose(a, inverse(b)), radius);
}

RaagAutomorphism TaggedGenerator::realize(const SimplicialGraph& g) const {
  switch (kind) {
    case Kind::Inversion:
      return inversion(g, v);
    case Kind::Fold:
      return fold(g, x, y_signed, side);
    case Kind::PartialConjugation:
      return partial_conjugation(g, x, c);
    case Kind::Whitehead:
      return whitehead_automorphism(g, partition, base_signed);
  }
  fail("unknown generator kind");
}

std::vector<TaggedGenerator> factor_whitehead(const SimplicialGraph& g,
                                              const WhiteheadPartition& p,
                                              int x_signed) {
  validate_partition(g, p, /*allow_singleton=*/true);
  int x = sv_vertex(x_signed);
  require(((p.bases(g) >> x) & 1) != 0, "not a base of the partition");
  SSet pi = p.side(p.side_of(x_signed));
  std::vector<TaggedGenerator> out;
  VSet conjugated = 0;
  for (int yv = 0; yv < g.n(); ++yv) {
    if (yv == x) continue;
    bool y_in = (pi >> sv(yv, false)) & 1, yi_in = (pi >> sv(yv, true)) & 1;
    if (y_in && yi_in) {
      conjugated |= (VSet(1) << yv);
    } else if (y_in) {
      TaggedGenerator t;
      t.kind = TaggedGenerator::Kind::Fold;
      t.x = yv;
      t.y_signed = x_signed;
      t.side = FoldSide::Right;
      out.push_back(t);
    } else if (yi_in) {
      TaggedGenerator t;
      t.kind = TaggedGenerator::Kind::Fold;
      t.x = yv;
      t.y_signed = x_signed;
      t.side = FoldSide::Left;
      out.push_back(t);
    }
  }
  // The doubly-contained vertices fall into whole components of Γ∖st(x).
  for (VSet comp : components(g, g.all_vertices() & ~star(g, x))) {
    if (comp & conjugated) {
      TaggedGenerator t;
      t.kind = TaggedGenerator::Kind::PartialConjugation;
      t.x = x_signed;
      t.c = comp;
      out.push_back(t);
      conjugated &= ~comp;
    }
  }
  require(conjugated == 0, "whitehead factorization left unexplained vertices");
  return out;
}

}  // namespace gcx
