#include "qdiff/covariance.hpp"

#include <algorithm>
#include <cassert>
#include <set>

#include <json.hpp>

#include "qdiff/parser.hpp"

namespace qdiff {

namespace {

Scalar S(const char* text) { return parse_scalar(text); }

// "d2x" -> ("x", 2), "dtheta" -> ("theta", 1), "x" -> ("x", 0)
std::pair<std::string, int> base_and_level(const std::string& name) {
  if (name.rfind("d2", 0) == 0 && name.size() > 2) return {name.substr(2), 2};
  if (name.size() > 1 && name[0] == 'd' && name != "dgen")
    return {name.substr(1), 1};
  return {name, 0};
}

CrossTable substitute_table(const CrossTable& t, const Bindings& b) {
  CrossTable out;
  for (const auto& [key, v] : t.entries) out.entries[key] = v.substitute(b);
  return out;
}

}  // namespace

const Scalar& CrossTable::at(const std::string& plane_gen,
                             const std::string& group_gen) const {
  auto it = entries.find({plane_gen, group_gen});
  if (it == entries.end())
    throw ValidationError("missing cross entry (" + plane_gen + ", " +
                          group_gen + ")");
  return it->second;
}

void CrossTable::set(const std::string& plane_gen, const std::string& group_gen,
                     Scalar v) {
  entries[{plane_gen, group_gen}] = std::move(v);
}

CrossTable cross_plane_gl2_symbolic() {
  CrossTable t;
  t.set("x", "a", S("1"));
  t.set("x", "b", S("q/p"));
  t.set("x", "c", S("q/q'"));
  t.set("x", "dgen", S("q*k/q'"));
  t.set("y", "a", S("q*k/q'"));
  t.set("y", "b", S("(q^2/p)*(q-(p-1/q')*k)"));
  t.set("y", "c", S("(q^2/q')*(q-(p-1/q')*k)"));
  t.set("y", "dgen", S("(q^3/(q'*p))*(q-(p-1/q')*k)"));
  return t;
}

CrossTable cross_plane_gl2() {
  CrossTable t;
  t.set("x", "a", S("1"));
  t.set("x", "b", S("q/p"));
  t.set("x", "c", S("1"));
  t.set("x", "dgen", S("q/p"));
  t.set("y", "a", S("q/p"));
  t.set("y", "b", S("q^2/p^2"));
  t.set("y", "c", S("q/p"));
  t.set("y", "dgen", S("q^2/p^2"));
  return t;
}

CrossTable cross_splane_gl11() {
  CrossTable t;
  t.set("x", "a", S("1"));
  t.set("x", "beta", S("1"));
  t.set("x", "gamma", S("1"));
  t.set("x", "dgen", S("1"));
  t.set("theta", "a", S("1"));
  t.set("theta", "beta", S("-1"));
  t.set("theta", "gamma", S("-1"));
  t.set("theta", "dgen", S("1"));
  return t;
}

CrossTable cross_splane_gl11_pq_symbolic() {
  CrossTable t;
  t.set("x", "a", S("k"));
  t.set("x", "beta", S("(q/p)*k"));
  t.set("x", "gamma", S("(q/q')*k"));
  t.set("x", "dgen", S("(q^2/(q'*p))*k"));
  t.set("theta", "a", S("(q^2/(q'*p))*k"));
  t.set("theta", "beta", S("-(q^3/(q'*p^2))*k"));
  t.set("theta", "gamma", S("-(q^3/(q'^2*p))*k"));
  t.set("theta", "dgen", S("(q^4/(q'^2*p^2))*k"));
  return t;
}

CrossTable cross_splane_gl11_pq() {
  return substitute_table(cross_splane_gl11_pq_symbolic(),
                          {{kVarK, S("q/p")}, {kVarQPrime, S("q")}});
}

CrossTable extend_cross(const CrossTable& coords, const Presentation& plane,
                        const Presentation& group) {
  CrossTable out;
  for (const auto& pg : plane.generators()) {
    auto [base, level] = base_and_level(pg.name);
    for (const auto& gg : group.generators()) {
      Scalar e = coords.at(base, gg.name);
      if ((level * gg.total_parity()) % 2 == 1) e = -e;
      out.set(pg.name, gg.name, std::move(e));
    }
  }
  return out;
}

namespace {

Presentation build_combined_impl(const Presentation& plane,
                                 const Presentation& group,
                                 const CrossTable& cross, bool require_complete) {
  std::vector<Generator> gens = group.generators();
  gens.insert(gens.end(), plane.generators().begin(), plane.generators().end());
  const uint8_t off = static_cast<uint8_t>(group.num_generators());

  std::vector<RewriteRule> rules = group.rules();
  for (const auto& r : plane.rules()) {
    RewriteRule nr;
    nr.lhs = r.lhs;
    for (auto& g : nr.lhs) g = static_cast<uint8_t>(g + off);
    for (const auto& [w, c] : r.rhs.terms()) {
      Word nw = w;
      for (auto& g : nw) g = static_cast<uint8_t>(g + off);
      nr.rhs.add(nw, c);
    }
    rules.push_back(std::move(nr));
  }
  for (size_t i = 0; i < plane.num_generators(); ++i) {
    for (size_t gj = 0; gj < group.num_generators(); ++gj) {
      const Scalar& e =
          cross.at(plane.gen(static_cast<int>(i)).name,
                   group.gen(static_cast<int>(gj)).name);
      if (e.is_zero())
        throw ValidationError("cross table entry must be nonzero: (" +
                              plane.gen(static_cast<int>(i)).name + ", " +
                              group.gen(static_cast<int>(gj)).name + ")");
      RewriteRule r;
      r.lhs = {static_cast<uint8_t>(off + i), static_cast<uint8_t>(gj)};
      r.rhs = Element::from_word({static_cast<uint8_t>(gj),
                                  static_cast<uint8_t>(off + i)}, e);
      rules.push_back(std::move(r));
    }
  }

  std::set<int> params(plane.params().begin(), plane.params().end());
  params.insert(group.params().begin(), group.params().end());
  for (const auto& [key, v] : cross.entries)
    for (int vi = 0; vi < kNumVars; ++vi)
      if (v.uses(vi)) params.insert(vi);

  Presentation P(std::move(gens), std::move(rules),
                 std::vector<int>(params.begin(), params.end()));
  if (require_complete) {
    auto missing = missing_pair_rules(P);
    if (!missing.empty())
      throw ValidationError("combined presentation incomplete: " +
                            missing.front());
  }
  return P;
}

}  // namespace

Presentation build_combined(const Presentation& plane, const Presentation& group,
                            const CrossTable& cross) {
  return build_combined_impl(plane, group, cross, true);
}

TransformationSpec make_transform(const Presentation& combined,
                                  const Presentation& plane,
                                  TransformVariant variant) {
  std::vector<int> coords;
  for (size_t i = 0; i < plane.num_generators(); ++i)
    if (plane.gen(static_cast<int>(i)).degree == 0)
      coords.push_back(static_cast<int>(i));
  if (coords.size() != 2)
    throw ValidationError("transformation needs exactly two coordinates");

  const bool super = combined.rank_of("beta") >= 0;
  struct Entry {
    Scalar coeff;
    std::string name;
  };
  std::array<std::array<Entry, 2>, 2> m;
  switch (variant) {
    case TransformVariant::T:
      m = {{{{{Scalar::one(), "a"}, {Scalar::one(), super ? "beta" : "b"}}},
            {{{Scalar::one(), super ? "gamma" : "c"}, {Scalar::one(), "dgen"}}}}};
      break;
    case TransformVariant::TransposeT:
      if (super)
        throw ValidationError("transpose coaction needs a bosonic group");
      m = {{{{{Scalar::one(), "a"}, {Scalar::one(), "c"}}},
            {{{Scalar::one(), "b"}, {Scalar::one(), "dgen"}}}}};
      break;
    case TransformVariant::SuperTransposeT:
      if (!super)
        throw ValidationError("supertranspose coaction needs a supergroup");
      m = {{{{{Scalar::one(), "a"}, {-Scalar::one(), "gamma"}}},
            {{{Scalar::one(), "beta"}, {Scalar::one(), "dgen"}}}}};
      break;
  }

  TransformationSpec t;
  t.variant = variant;
  for (size_t pr = 0; pr < plane.num_generators(); ++pr) {
    const std::string& name = plane.gen(static_cast<int>(pr)).name;
    auto [base, level] = base_and_level(name);
    int row = base == plane.gen(coords[0]).name ? 0 : 1;
    Element img;
    for (int col = 0; col < 2; ++col) {
      const Entry& e = m[row][col];
      int letter = combined.rank_of(e.name);
      if (letter < 0) throw ValidationError("missing group entry " + e.name);
      std::string target_base = plane.gen(coords[col]).name;
      std::string target_name = level == 0   ? target_base
                                : level == 1 ? "d" + target_base
                                             : "d2" + target_base;
      int target = combined.rank_of(target_name);
      if (target < 0)
        throw ValidationError("missing combined generator " + target_name);
      Scalar coeff = e.coeff;
      // d of the coordinate image: each d-level flips the sign once for a
      // fermionic matrix entry
      if ((level * combined.gen(letter).total_parity()) % 2 == 1) coeff = -coeff;
      img.add({static_cast<uint8_t>(letter), static_cast<uint8_t>(target)},
              coeff);
    }
    t.images[static_cast<int>(pr)] = std::move(img);
  }
  return t;
}

Element apply_transform(const Element& e, const Presentation& plane,
                        const TransformationSpec& t,
                        const Presentation& combined) {
  (void)plane;
  Element out;
  for (const auto& [w, c] : e.terms()) {
    Element acc = Element::from_scalar(c);
    for (uint8_t g : w) {
      auto it = t.images.find(g);
      if (it == t.images.end())
        throw ValidationError("transformation image missing for generator");
      acc = multiply(acc, it->second, combined);
    }
    out = out + acc;
  }
  return normalize(out, combined);
}

CovarianceReport check_covariance(const Presentation& combined,
                                  const Presentation& plane,
                                  const TransformationSpec& t,
                                  const std::vector<SourceRelation>& relations) {
  CovarianceReport rep;
  for (const auto& rel : relations) {
    Element residual =
        apply_transform(rel.lhs - rel.rhs, plane, t, combined);
    if (!residual.is_zero()) rep.covariant = false;
    rep.residuals.emplace_back(rel.label, std::move(residual));
  }
  return rep;
}

CovarianceSetup covariance_setup(PresetId id) {
  if (!is_calculus_preset(id))
    throw UnknownPresetError("covariance setup needs a calculus preset");
  CovarianceSetup s;
  s.plane = preset(id);
  CrossTable coords;
  const bool super = is_super_preset(id);
  if (id == PresetId::PlaneQD2) {
    s.group = specialize(preset(PresetId::GlPQ2),
                         {{kVarQPrime, S("q")}, {kVarP, S("q")}});
    coords = substitute_table(cross_plane_gl2(), {{kVarP, S("q")}});
  } else if (!super) {
    s.group = specialize(preset(PresetId::GlPQ2), {{kVarQPrime, S("q")}});
    coords = cross_plane_gl2();
  } else if (id == PresetId::SplaneQD2 || id == PresetId::SplaneQD3) {
    s.group = preset(PresetId::GlQ11);
    coords = cross_splane_gl11();
  } else {
    s.group = specialize(preset(PresetId::GlPQ11), {{kVarQPrime, S("q")}});
    coords = cross_splane_gl11_pq();
  }
  s.cross = extend_cross(coords, s.plane, s.group);
  s.combined = build_combined(s.plane, s.group, s.cross);
  s.transforms.push_back(make_transform(s.combined, s.plane, TransformVariant::T));
  s.transforms.push_back(make_transform(
      s.combined, s.plane,
      super ? TransformVariant::SuperTransposeT : TransformVariant::TransposeT));
  return s;
}

// ---------------------------------------------------------------------------
// First-order-calculus derivation (the 16-coefficient system)

namespace {

constexpr uint32_t kCMask = 0xFFFF0u;  // variable-mask bits of C1..C16

Scalar cvar(int i) { return Scalar::var(kVarC1 + i); }

// Plane skeleton dy < dx < x < y carrying only the coordinate exchange rule
// plus the four unknown-coefficient rules.
Presentation ansatz_plane() {
  std::vector<Generator> gens = {{"dy", 1, 0}, {"dx", 1, 0}, {"x", 0, 0},
                                 {"y", 0, 0}};
  Presentation skel(gens, {}, {});
  const Word dy{0}, dx{1}, x{2}, y{3};
  auto w2 = [](uint8_t g1, uint8_t g2) { return Word{g1, g2}; };
  // targets dx x, dy x, dx y, dy y
  const std::array<Word, 4> targets = {w2(1, 2), w2(0, 2), w2(1, 3), w2(0, 3)};
  const std::array<Word, 4> lhs = {w2(2, 1), w2(2, 0), w2(3, 1), w2(3, 0)};
  std::vector<RewriteRule> rules;
  {
    RewriteRule plane_rel;
    plane_rel.lhs = w2(3, 2);  // y x
    plane_rel.rhs = Element::from_word(w2(2, 3), S("1/q"));
    rules.push_back(std::move(plane_rel));
  }
  for (int r = 0; r < 4; ++r) {
    RewriteRule rr;
    rr.lhs = lhs[r];
    for (int tcol = 0; tcol < 4; ++tcol)
      rr.rhs.add(targets[tcol], cvar(4 * r + tcol));
    rules.push_back(std::move(rr));
  }
  std::vector<int> params = {kVarQ, kVarP, kVarQPrime, kVarK};
  for (int i = 0; i < 16; ++i) params.push_back(kVarC1 + i);
  return Presentation(std::move(gens), std::move(rules), std::move(params));
}

// The four ansatz relations as (lhs word) - (unknown combination), over the
// ansatz plane ranks.
std::vector<SourceRelation> ansatz_relations(const Presentation& plane) {
  std::vector<SourceRelation> rels;
  const std::array<const char*, 4> lhs_names = {"x*dx", "x*dy", "y*dx", "y*dy"};
  const std::array<const char*, 4> target_names = {"dx*x", "dy*x", "dx*y",
                                                   "dy*y"};
  for (int r = 0; r < 4; ++r) {
    SourceRelation rel;
    rel.lhs = parse_element(lhs_names[r], plane);
    for (int t = 0; t < 4; ++t)
      rel.rhs = rel.rhs + parse_element(target_names[t], plane).scaled(
                              cvar(4 * r + t));
    rel.label = lhs_names[r];
    rels.push_back(std::move(rel));
  }
  return rels;
}

// Splits a C-linear scalar into the 16 unknown coefficients and the constant.
std::pair<std::array<Scalar, 16>, Scalar> split_linear(const Scalar& s) {
  if (s.den().used_vars_mask() & kCMask)
    throw std::logic_error("ansatz row with unknowns in a denominator");
  std::array<Poly, 16> nums;
  Poly constant;
  for (const auto& [m, c] : s.num().terms()) {
    int idx = -1;
    int total = 0;
    for (int i = 0; i < 16; ++i) {
      if (m.e[kVarC1 + i] != 0) {
        total += m.e[kVarC1 + i];
        idx = i;
      }
    }
    if (total == 0) {
      constant.add_term(m, c);
    } else if (total == 1) {
      Mono rest = m;
      rest.e[kVarC1 + idx] = 0;
      nums[idx].add_term(rest, c);
    } else {
      throw std::logic_error("ansatz row of degree > 1 in the unknowns");
    }
  }
  std::array<Scalar, 16> coeff;
  for (int i = 0; i < 16; ++i) coeff[i] = Scalar(nums[i], s.den());
  return {std::move(coeff), Scalar(constant, s.den())};
}

Poly strip_units(Poly f, const std::vector<Poly>& units) {
  bool changed = true;
  while (changed && !f.is_constant()) {
    changed = false;
    for (const auto& u : units) {
      while (!f.is_constant()) {
        Poly g = poly_gcd(f, u);
        if (g.is_constant()) break;
        f = divexact(f, g);
        changed = true;
      }
      if (f.is_constant()) break;
    }
  }
  if (f.is_zero()) return f;
  return f.scaled(f.leading_coeff().inverse());
}

struct Eliminator {
  std::array<std::optional<LinearEquation>, 16> pivot;
  std::vector<Poly> constraints;
  std::vector<Poly> units;
  int rank = 0;

  void push_constraint(Poly f) {
    f = strip_units(std::move(f), units);
    if (f.is_zero()) return;
    if (f.is_constant())
      throw std::runtime_error("inconsistent ansatz system");
    for (const auto& c : constraints)
      if (c == f) return;
    constraints.push_back(std::move(f));
  }

  void add(LinearEquation row) {
    for (int i = 0; i < 16; ++i)
      if (pivot[i] && !row.coeff[i].is_zero()) {
        Scalar f = row.coeff[i];
        for (int jj = 0; jj < 16; ++jj)
          row.coeff[jj] -= f * pivot[i]->coeff[jj];
        row.constant -= f * pivot[i]->constant;
      }
    int lead = -1;
    for (int i = 0; i < 16; ++i)
      if (!row.coeff[i].is_zero()) {
        lead = i;
        break;
      }
    if (lead < 0) {
      if (!row.constant.is_zero()) push_constraint(row.constant.num());
      return;
    }
    // polynomial content of the cleared row: a common non-unit factor is a
    // parameter constraint, and the row is vacuous on the constrained locus
    Poly den_prod = Poly::one();
    for (int i = 0; i < 16; ++i)
      if (!row.coeff[i].is_zero()) den_prod = den_prod * row.coeff[i].den();
    if (!row.constant.is_zero()) den_prod = den_prod * row.constant.den();
    Poly content;
    auto acc_content = [&](const Scalar& s) {
      if (s.is_zero()) return;
      content = poly_gcd(content, s.num() * divexact(den_prod, s.den()));
    };
    for (int i = 0; i < 16; ++i) acc_content(row.coeff[i]);
    acc_content(row.constant);
    Poly residue = strip_units(content, units);
    if (!residue.is_constant()) {
      push_constraint(residue);
      return;
    }
    Scalar inv = row.coeff[lead].inverse();
    for (int i = 0; i < 16; ++i) row.coeff[i] *= inv;
    row.constant *= inv;
    for (int i = 0; i < 16; ++i) {
      if (!pivot[i]) continue;
      Scalar f = pivot[i]->coeff[lead];
      if (f.is_zero()) continue;
      for (int jj = 0; jj < 16; ++jj)
        pivot[i]->coeff[jj] -= f * row.coeff[jj];
      pivot[i]->constant -= f * row.constant;
    }
    pivot[lead] = std::move(row);
    ++rank;
  }
};

// d with x -> dx, y -> dy on the four-generator plane, sign (-1)^degree.
Element d_first_order(const Element& e, const Presentation& plane) {
  Element out;
  for (const auto& [w, c] : e.terms()) {
    CycloRat prefix(1);
    for (size_t i = 0; i < w.size(); ++i) {
      int img = -1;
      if (plane.gen(w[i]).name == "x") img = plane.rank_of("dx");
      if (plane.gen(w[i]).name == "y") img = plane.rank_of("dy");
      if (img >= 0) {
        Word nw = w;
        nw[i] = static_cast<uint8_t>(img);
        out.add(nw, c * Scalar(prefix));
      }
      prefix *= CycloRat(-1).pow(plane.gen(w[i]).degree);
      if (plane.gen(w[i]).parity & 1) prefix = -prefix;
    }
  }
  return out;
}

}  // namespace

AnsatzSystem build_ansatz_system() {
  AnsatzSystem sys;
  Presentation plane = ansatz_plane();
  Presentation group = preset(PresetId::GlPQ2);
  CrossTable cross = extend_cross(cross_plane_gl2_symbolic(), plane, group);
  sys.combined = build_combined_impl(plane, group, cross, false);

  auto rels = ansatz_relations(plane);
  for (auto variant : {TransformVariant::T, TransformVariant::TransposeT}) {
    TransformationSpec t = make_transform(sys.combined, plane, variant);
    for (const auto& rel : rels) {
      Element residual =
          apply_transform(rel.lhs - rel.rhs, plane, t, sys.combined);
      for (const auto& [w, s] : residual.terms()) {
        LinearEquation eq;
        std::tie(eq.coeff, eq.constant) = split_linear(s);
        eq.origin = "covariance " +
                    std::string(variant == TransformVariant::T ? "T" : "tT") +
                    " " + rel.label + " @ " + sys.combined.word_str(w);
        sys.equations.push_back(std::move(eq));
      }
    }
  }

  // differentiating the plane relation x y - q y x
  {
    Element plane_rel = parse_element("x*y - q*y*x", plane);
    Element de = d_first_order(plane_rel, plane);
    // shift plane ranks into the combined algebra
    Element shifted;
    const uint8_t off = static_cast<uint8_t>(group.num_generators());
    for (const auto& [w, c] : de.terms()) {
      Word nw = w;
      for (auto& g : nw) g = static_cast<uint8_t>(g + off);
      shifted.add(nw, c);
    }
    Element residual = normalize(shifted, sys.combined);
    for (const auto& [w, s] : residual.terms()) {
      LinearEquation eq;
      std::tie(eq.coeff, eq.constant) = split_linear(s);
      eq.origin = "d(plane relation) @ " + sys.combined.word_str(w);
      sys.equations.push_back(std::move(eq));
    }
  }
  return sys;
}

AnsatzSolution solve_ansatz(bool with_associativity) {
  AnsatzSystem sys = build_ansatz_system();

  Eliminator elim;
  for (const auto& r : sys.combined.rules())
    for (const auto& [w, c] : r.rhs.terms()) {
      if (c.num().used_vars_mask() & kCMask) continue;
      if (!c.num().is_constant()) elim.units.push_back(c.num());
      if (!c.den().is_constant()) elim.units.push_back(c.den());
    }
  for (const auto& eq : sys.equations) elim.add(eq);

  AnsatzSolution sol;
  sol.rank = elim.rank;
  for (const auto& f : elim.constraints)
    sol.residual_constraints.push_back(Scalar(f));

  int free_idx = -1;
  for (int i = 0; i < 16; ++i)
    if (!elim.pivot[i]) {
      if (free_idx >= 0)
        throw std::runtime_error("ansatz system has more than one free unknown");
      free_idx = i;
    }
  std::array<Scalar, 16> family;
  if (free_idx >= 0) {
    sol.free_unknown = var_names()[kVarC1 + free_idx];
    family[free_idx] = cvar(free_idx);
  }
  for (int i = 0; i < 16; ++i) {
    if (!elim.pivot[i]) continue;
    Scalar v = -elim.pivot[i]->constant;
    if (free_idx >= 0) v -= elim.pivot[i]->coeff[free_idx] * cvar(free_idx);
    family[i] = v;
  }

  if (!with_associativity || free_idx < 0) {
    for (int i = 0; i < 16; ++i)
      sol.coefficients[var_names()[kVarC1 + i]] = family[i];
    return sol;
  }

  // ---- associativity stage: fix the line parameter -------------------------
  // plane presentation carrying the family, with the two-form relations
  // obtained by differentiating the four first-order relations
  std::vector<Generator> gens = {{"dy", 1, 0}, {"dx", 1, 0}, {"x", 0, 0},
                                 {"y", 0, 0}};
  Presentation skel(gens, {}, {});
  auto w2 = [](uint8_t a, uint8_t b) { return Word{a, b}; };
  const std::array<Word, 4> targets = {w2(1, 2), w2(0, 2), w2(1, 3), w2(0, 3)};
  const std::array<Word, 4> lhs = {w2(2, 1), w2(2, 0), w2(3, 1), w2(3, 0)};
  std::vector<RewriteRule> rules;
  {
    RewriteRule pr;
    pr.lhs = w2(3, 2);
    pr.rhs = Element::from_word(w2(2, 3), S("1/q"));
    rules.push_back(std::move(pr));
  }
  std::vector<Element> dd_relations;
  for (int r = 0; r < 4; ++r) {
    RewriteRule rr;
    rr.lhs = lhs[r];
    Element rhs;
    for (int t = 0; t < 4; ++t) rhs.add(targets[t], family[4 * r + t]);
    rr.rhs = rhs;
    Element rel = Element::from_word(lhs[r]) - rhs;
    dd_relations.push_back(d_first_order(rel, skel));
    rules.push_back(std::move(rr));
  }
  // echelonize the two-form relations, largest word first, into rules
  std::vector<Element> rows = dd_relations;
  std::vector<RewriteRule> dd_rules;
  while (true) {
    // pick the row with the largest leading word
    int best = -1;
    for (size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].is_zero()) continue;
      if (best < 0 || word_deglex_less(rows[best].terms().rbegin()->first,
                                       rows[i].terms().rbegin()->first))
        best = static_cast<int>(i);
    }
    if (best < 0) break;
    Element row = rows[best];
    Word lead = row.terms().rbegin()->first;
    Scalar lc = row.terms().rbegin()->second;
    RewriteRule rr;
    rr.lhs = lead;
    rr.rhs = (Element::from_word(lead) - row.scaled(lc.inverse()));
    dd_rules.push_back(rr);
    std::vector<Element> next;
    for (size_t i = 0; i < rows.size(); ++i) {
      if (static_cast<int>(i) == best || rows[i].is_zero()) continue;
      Element e = rows[i];
      auto it = e.terms().find(lead);
      if (it != e.terms().end()) e = e - row.scaled(it->second / lc);
      if (!e.is_zero()) next.push_back(std::move(e));
    }
    rows = std::move(next);
  }
  for (auto& rr : dd_rules) rules.push_back(rr);
  Presentation family_plane(gens, rules, sys.combined.params());

  auto obstructions = critical_pairs(family_plane);
  Poly numerators;
  for (const auto& ob : obstructions)
    for (const auto& [w, c] : ob.difference.terms())
      numerators = poly_gcd(numerators, c.num());
  if (numerators.is_zero())
    throw std::runtime_error(
        "associativity stage found no obstruction to resolve");

  const int tv = kVarC1 + free_idx;
  auto cmap = numerators.coeffs_in(tv);
  Poly content;
  for (const auto& [dg, cp] : cmap) content = poly_gcd(content, cp);
  Poly prim = divexact(numerators, content);
  Poly leftover = strip_units(content, elim.units);
  if (!leftover.is_constant()) elim.push_constraint(leftover);

  cmap = prim.coeffs_in(tv);
  int deg = cmap.empty() ? 0 : cmap.rbegin()->first;
  if (deg < 1 || deg > 2)
    throw std::runtime_error("unexpected associativity condition of degree " +
                             std::to_string(deg));
  std::vector<Scalar> roots;
  auto coeff_of = [&](int d) {
    auto it = cmap.find(d);
    return it == cmap.end() ? Scalar::zero() : Scalar(it->second);
  };
  if (deg == 1) {
    roots.push_back(-coeff_of(0) / coeff_of(1));
  } else {
    Scalar a = coeff_of(2), b = coeff_of(1), c = coeff_of(0);
    if (c.is_zero()) {
      roots.push_back(Scalar::zero());
      if (!b.is_zero()) roots.push_back(-b / a);
    } else {
      Scalar disc = b * b - Scalar(4) * a * c;
      auto sq = scalar_sqrt(disc);
      if (!sq)
        throw std::runtime_error(
            "associativity condition does not factor over the function field");
      Scalar twoa = Scalar(2) * a;
      roots.push_back((-b + *sq) / twoa);
      roots.push_back((-b - *sq) / twoa);
    }
  }
  std::sort(roots.begin(), roots.end());
  roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
  sol.associativity_roots = roots;
  sol.residual_constraints.clear();
  for (const auto& f : elim.constraints)
    sol.residual_constraints.push_back(Scalar(f));

  // among the admissible roots keep the branch with a diagonal x dy relation
  // (no dx y term), the form every displayed first-order calculus takes
  std::optional<std::array<Scalar, 16>> selected;
  for (const auto& root : roots) {
    std::array<Scalar, 16> table;
    bool ok = true;
    for (int i = 0; i < 16 && ok; ++i) {
      try {
        table[i] = family[i].substitute({{tv, root}});
      } catch (const PoleError&) {
        ok = false;
      }
    }
    if (!ok || !table[6].is_zero()) continue;
    if (selected)
      throw std::runtime_error("associativity branch selection is ambiguous");
    selected = table;
    sol.selected_root = root;
  }
  if (!selected)
    throw std::runtime_error("no associativity root keeps x dy diagonal");
  for (int i = 0; i < 16; ++i)
    sol.coefficients[var_names()[kVarC1 + i]] = (*selected)[i];
  return sol;
}

std::string AnsatzSolution::to_json() const {
  nlohmann::json doc;
  nlohmann::json coeffs = nlohmann::json::object();
  for (const auto& [name, val] : coefficients) coeffs[name] = val.str();
  doc["coefficients"] = coeffs;
  doc["rank"] = rank;
  nlohmann::json cons = nlohmann::json::array();
  for (const auto& c : residual_constraints) cons.push_back(c.str());
  doc["residual_constraints"] = cons;
  doc["free_unknown"] = free_unknown;
  nlohmann::json rts = nlohmann::json::array();
  for (const auto& r : associativity_roots) rts.push_back(r.str());
  doc["associativity_roots"] = rts;
  doc["selected_root"] = selected_root.str();
  return doc.dump(2);
}

}  // namespace qdiff
