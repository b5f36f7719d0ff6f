#include "qdiff/presets.hpp"

#include <map>
#include <set>

#include "qdiff/parser.hpp"

namespace qdiff {

std::string preset_name(PresetId id) {
  switch (id) {
    case PresetId::PlanePQD2: return "plane-pq-d2";
    case PresetId::PlanePQD3: return "plane-pq-d3";
    case PresetId::PlaneQD2: return "plane-q-d2";
    case PresetId::SplaneQD2: return "splane-q-d2";
    case PresetId::SplaneQD3: return "splane-q-d3";
    case PresetId::SplanePQD2: return "splane-pq-d2";
    case PresetId::SplanePQD3: return "splane-pq-d3";
    case PresetId::GlPQ2: return "gl-pq-2";
    case PresetId::GlQ11: return "gl-q-11";
    case PresetId::GlPQ11: return "gl-pq-11";
  }
  return "?";
}

const std::vector<PresetId>& all_presets() {
  static const std::vector<PresetId> ids = {
      PresetId::PlanePQD2,  PresetId::PlanePQD3,  PresetId::PlaneQD2,
      PresetId::SplaneQD2,  PresetId::SplaneQD3,  PresetId::SplanePQD2,
      PresetId::SplanePQD3, PresetId::GlPQ2,      PresetId::GlQ11,
      PresetId::GlPQ11};
  return ids;
}

std::optional<PresetId> preset_from_name(const std::string& name) {
  for (PresetId id : all_presets())
    if (preset_name(id) == name) return id;
  return std::nullopt;
}

bool is_group_preset(PresetId id) {
  return id == PresetId::GlPQ2 || id == PresetId::GlQ11 || id == PresetId::GlPQ11;
}
bool is_calculus_preset(PresetId id) { return !is_group_preset(id); }

bool is_super_preset(PresetId id) {
  switch (id) {
    case PresetId::SplaneQD2:
    case PresetId::SplaneQD3:
    case PresetId::SplanePQD2:
    case PresetId::SplanePQD3:
    case PresetId::GlQ11:
    case PresetId::GlPQ11:
      return true;
    default:
      return false;
  }
}

int preset_nilpotency(PresetId id) {
  switch (id) {
    case PresetId::PlanePQD2:
    case PresetId::PlaneQD2:
    case PresetId::SplaneQD2:
    case PresetId::SplanePQD2:
      return 2;
    case PresetId::PlanePQD3:
    case PresetId::SplaneQD3:
    case PresetId::SplanePQD3:
      return 3;
    default:
      return 0;
  }
}

namespace {

struct RuleSpec {
  const char* lhs;
  const char* rhs;
};

Presentation build(std::vector<Generator> gens, std::vector<int> params,
                   const std::vector<RuleSpec>& specs,
                   std::vector<std::string> notes) {
  Presentation skeleton(gens, {}, params);
  std::vector<RewriteRule> rules;
  for (const auto& s : specs) {
    RewriteRule r;
    Element lhs = parse_element(s.lhs, skeleton);
    if (lhs.size() != 1 || !lhs.terms().begin()->second.is_one())
      throw ValidationError(std::string("rule lhs must be a single word: ") + s.lhs);
    r.lhs = lhs.terms().begin()->first;
    r.rhs = parse_element(s.rhs, skeleton);
    rules.push_back(std::move(r));
  }
  Presentation P(std::move(gens), std::move(rules), std::move(params),
                 std::move(notes));
  auto missing = missing_pair_rules(P);
  if (!missing.empty())
    throw ValidationError("incomplete reordering table: " + missing.front());
  return P;
}

std::vector<Generator> plane_d2_gens() {
  return {{"dy", 1, 0}, {"dx", 1, 0}, {"x", 0, 0}, {"y", 0, 0}};
}
std::vector<Generator> plane_d3_gens() {
  return {{"d2y", 2, 0}, {"d2x", 2, 0}, {"dy", 1, 0},
          {"dx", 1, 0},  {"x", 0, 0},   {"y", 0, 0}};
}
std::vector<Generator> splane_d2_gens() {
  return {{"dtheta", 1, 1}, {"dx", 1, 0}, {"x", 0, 0}, {"theta", 0, 1}};
}
std::vector<Generator> splane_d3_gens() {
  return {{"d2theta", 2, 1}, {"d2x", 2, 0}, {"dtheta", 1, 1},
          {"dx", 1, 0},      {"x", 0, 0},   {"theta", 0, 1}};
}
std::vector<Generator> gl2_gens() {
  return {{"a", 0, 0}, {"b", 0, 0}, {"c", 0, 0}, {"dgen", 0, 0}};
}
std::vector<Generator> gl11_gens() {
  return {{"a", 0, 0}, {"beta", 0, 1}, {"gamma", 0, 1}, {"dgen", 0, 0}};
}

Presentation make_preset(PresetId id) {
  switch (id) {
    case PresetId::PlanePQD2:
      return build(
          plane_d2_gens(), {kVarQ, kVarP},
          {
              {"y*x", "(1/q)*x*y"},
              {"x*dx", "(1/(p*q))*dx*x"},
              {"x*dy", "(1/p)*dy*x"},
              {"y*dy", "(1/(p*q))*dy*y"},
              {"y*dx", "(1/(p*q)-1)*dy*x + (1/q)*dx*y"},
              {"dx*dy", "(-1/p)*dy*dx"},
              {"dx*dx", "0"},
              {"dy*dy", "0"},
          },
          {"two-parameter quantum plane, first-order covariant calculus, "
           "d^2 = 0"});

    case PresetId::PlaneQD2:
      return build(
          plane_d2_gens(), {kVarQ},
          {
              {"y*x", "(1/q)*x*y"},
              {"x*dx", "(1/q^2)*dx*x"},
              {"x*dy", "(1/q)*dy*x"},
              {"y*dy", "(1/q^2)*dy*y"},
              {"y*dx", "(1/q^2-1)*dy*x + (1/q)*dx*y"},
              {"dx*dy", "(-1/q)*dy*dx"},
              {"dx*dx", "0"},
              {"dy*dy", "0"},
          },
          {"one-parameter quantum plane, first-order covariant calculus, "
           "d^2 = 0 (p = q limit of the two-parameter calculus)"});

    case PresetId::PlanePQD3:
      return build(
          plane_d3_gens(), {kVarQ, kVarP},
          {
              {"y*x", "(1/q)*x*y"},
              {"x*dx", "j^2*dx*x"},
              {"x*dy", "(-(j*q)/(1+q*p))*dy*x + ((j^2*q*p-1)/(1+q*p))*dx*y"},
              {"y*dy", "j^2*dy*y"},
              {"y*dx", "((j^2-q*p)/(1+q*p))*dy*x - ((j*p)/(1+q*p))*dx*y"},
              {"x*d2x", "j^2*d2x*x"},
              {"x*d2y", "(-(j*q)/(1+q*p))*d2y*x + ((j^2*q*p-1)/(1+q*p))*d2x*y"},
              {"y*d2y", "j^2*d2y*y"},
              {"y*d2x", "((j^2-q*p)/(1+q*p))*d2y*x - ((j*p)/(1+q*p))*d2x*y"},
              {"dx*d2x", "j*d2x*dx"},
              {"dx*d2y", "(-q/(1+q*p))*d2y*dx + ((j*q*p-j^2)/(1+q*p))*d2x*dy"},
              {"dy*d2y", "j*d2y*dy"},
              {"dy*d2x", "((j-j^2*q*p)/(1+q*p))*d2y*dx - (p/(1+q*p))*d2x*dy"},
              {"dx*dy", "q*dy*dx"},
              {"d2x*d2y", "q*d2y*d2x"},
              {"dx*dx*dx", "0"},
              {"dy*dy*dy", "0"},
          },
          {"two-parameter quantum plane, generalized covariant calculus, "
           "d^3 = 0 with d^2 != 0",
           "cube nilpotency of the first differentials included as rules"});

    case PresetId::SplaneQD2:
      return build(
          splane_d2_gens(), {kVarQ},
          {
              {"theta*x", "(1/q)*x*theta"},
              {"theta*theta", "0"},
              {"x*dx", "(1/q^2)*dx*x"},
              {"x*dtheta", "(1/q)*dtheta*x"},
              {"theta*dtheta", "dtheta*theta"},
              {"theta*dx", "(1-1/q^2)*dtheta*x - (1/q)*dx*theta"},
              {"dx*dtheta", "(1/q)*dtheta*dx"},
              {"dx*dx", "0"},
          },
          {"one-parameter quantum superplane, d^2 = 0 covariant calculus"});

    case PresetId::SplanePQD2:
      return build(
          splane_d2_gens(), {kVarQ, kVarP},
          {
              {"theta*x", "(1/q)*x*theta"},
              {"theta*theta", "0"},
              {"x*dx", "(1/(q*p))*dx*x"},
              {"x*dtheta", "(1/p)*dtheta*x"},
              {"theta*dtheta", "dtheta*theta"},
              {"theta*dx", "(1-1/(q*p))*dtheta*x - (1/q)*dx*theta"},
              {"dx*dtheta", "(1/p)*dtheta*dx"},
              {"dx*dx", "0"},
          },
          {"two-parameter quantum superplane, d^2 = 0 covariant calculus"});

    case PresetId::SplaneQD3:
      return build(
          splane_d3_gens(), {kVarQ},
          {
              {"theta*x", "(1/q)*x*theta"},
              {"theta*theta", "0"},
              {"x*dx", "j^2*dx*x"},
              {"x*dtheta",
               "(-(j*q)/(1+q^2))*dtheta*x + ((j^2*q^2-1)/(1+q^2))*dx*theta"},
              {"theta*dtheta", "dtheta*theta"},
              {"theta*dx",
               "((q^2-j^2)/(1+q^2))*dtheta*x + ((j*q)/(1+q^2))*dx*theta"},
              {"dx*dtheta", "-q*dtheta*dx"},
              {"dtheta*dtheta", "0"},
              {"x*d2x", "j^2*d2x*x"},
              {"x*d2theta",
               "(-(j*q)/(1+q^2))*d2theta*x + ((j^2*q^2-1)/(1+q^2))*d2x*theta"},
              {"theta*d2theta", "-d2theta*theta"},
              {"theta*d2x",
               "((j^2-q^2)/(1+q^2))*d2theta*x - ((j*q)/(1+q^2))*d2x*theta"},
              {"dx*d2x", "j*d2x*dx"},
              {"dx*d2theta",
               "(q/(1+q^2))*d2theta*dx + ((j*q^2-j^2)/(1+q^2))*d2x*dtheta"},
              {"dtheta*d2theta", "j^2*d2theta*dtheta"},
              {"dtheta*d2x",
               "((j^2*q^2-j)/(1+q^2))*d2theta*dx - (q/(1+q^2))*d2x*dtheta"},
              {"d2x*d2theta", "q*d2theta*d2x"},
              {"d2theta*d2theta", "0"},
          },
          {"one-parameter quantum superplane, generalized covariant calculus, "
           "d^3 = 0 with d^2 != 0"});

    case PresetId::SplanePQD3:
      return build(
          splane_d3_gens(), {kVarQ, kVarP},
          {
              {"theta*x", "(1/q)*x*theta"},
              {"theta*theta", "0"},
              {"x*dx", "j^2*dx*x"},
              {"x*dtheta",
               "(-(j*q)/(1+q*p))*dtheta*x + ((j^2*q*p-1)/(1+q*p))*dx*theta"},
              {"theta*dtheta", "dtheta*theta"},
              {"theta*dx",
               "((q*p-j^2)/(1+q*p))*dtheta*x + ((j*p)/(1+q*p))*dx*theta"},
              {"dx*dtheta", "-q*dtheta*dx"},
              {"dtheta*dtheta", "0"},
              {"x*d2x", "j^2*d2x*x"},
              {"x*d2theta",
               "(-(j*q)/(1+q*p))*d2theta*x + ((j^2*q*p-1)/(1+q*p))*d2x*theta"},
              {"theta*d2theta", "-d2theta*theta"},
              {"theta*d2x",
               "((j^2-q*p)/(1+q*p))*d2theta*x - ((j*p)/(1+q*p))*d2x*theta"},
              {"dx*d2x", "j*d2x*dx"},
              {"dx*d2theta",
               "(q/(1+q*p))*d2theta*dx + ((j*q*p-j^2)/(1+q*p))*d2x*dtheta"},
              {"dtheta*d2theta", "j^2*d2theta*dtheta"},
              {"dtheta*d2x",
               "((j^2*q*p-j)/(1+q*p))*d2theta*dx - (p/(1+q*p))*d2x*dtheta"},
              {"d2x*d2theta", "q*d2theta*d2x"},
              {"d2theta*d2theta", "0"},
          },
          {"two-parameter quantum superplane, generalized covariant calculus, "
           "d^3 = 0 with d^2 != 0"});

    case PresetId::GlPQ2:
      return build(
          gl2_gens(), {kVarP, kVarQPrime},
          {
              {"b*a", "(1/p)*a*b"},
              {"c*a", "(1/q')*a*c"},
              {"c*b", "(p/q')*b*c"},
              {"dgen*a", "a*dgen - (p-1/q')*b*c"},
              {"dgen*b", "(1/q')*b*dgen"},
              {"dgen*c", "(1/p)*c*dgen"},
          },
          {"two-parameter deformation of the 2x2 matrix group",
           "the entry usually written d is named dgen to keep the "
           "differential operator's name free"});

    case PresetId::GlQ11:
      return build(
          gl11_gens(), {kVarQ},
          {
              {"beta*a", "(1/q)*a*beta"},
              {"gamma*a", "(1/q)*a*gamma"},
              {"gamma*beta", "-beta*gamma"},
              {"dgen*a", "a*dgen - (1/q-q)*beta*gamma"},
              {"dgen*beta", "q*beta*dgen"},
              {"dgen*gamma", "q*gamma*dgen"},
              {"beta*beta", "0"},
              {"gamma*gamma", "0"},
          },
          {"one-parameter quantum supergroup on the 1|1 superplane"});

    case PresetId::GlPQ11:
      return build(
          gl11_gens(), {kVarP, kVarQPrime},
          {
              {"beta*a", "(1/p)*a*beta"},
              {"gamma*a", "(1/q')*a*gamma"},
              {"gamma*beta", "-(p/q')*beta*gamma"},
              {"dgen*a", "a*dgen - (1/q'-p)*beta*gamma"},
              {"dgen*beta", "p*beta*dgen"},
              {"dgen*gamma", "q'*gamma*dgen"},
              {"beta*beta", "0"},
              {"gamma*gamma", "0"},
          },
          {"two-parameter quantum supergroup on the 1|1 superplane"});
  }
  throw UnknownPresetError("unknown preset id");
}

struct RelSpec {
  const char* lhs;
  const char* rhs;
  bool covariant_block = true;
};

std::vector<SourceRelation> make_relations(PresetId id) {
  const Presentation& P = preset(id);
  std::vector<RelSpec> specs;
  switch (id) {
    case PresetId::PlanePQD2:
      specs = {
          {"x*y", "q*y*x"},
          {"x*dx", "(1/(p*q))*dx*x"},
          {"x*dy", "(1/p)*dy*x"},
          {"y*dy", "(1/(p*q))*dy*y"},
          {"y*dx", "(1/(p*q)-1)*dy*x + (1/q)*dx*y"},
          {"dx*dy", "(-1/p)*dy*dx"},
          {"dx*dx", "0"},
          {"dy*dy", "0"},
      };
      break;
    case PresetId::PlaneQD2:
      specs = {
          {"x*y", "q*y*x"},
          {"x*dx", "(1/q^2)*dx*x"},
          {"x*dy", "(1/q)*dy*x"},
          {"y*dy", "(1/q^2)*dy*y"},
          {"y*dx", "(1/q^2-1)*dy*x + (1/q)*dx*y"},
          {"dx*dy", "(-1/q)*dy*dx"},
          {"dx*dx", "0"},
          {"dy*dy", "0"},
      };
      break;
    case PresetId::PlanePQD3:
      specs = {
          {"x*y", "q*y*x"},
          {"x*dx", "j^2*dx*x"},
          {"x*dy", "(-(j*q)/(1+q*p))*dy*x + ((j^2*q*p-1)/(1+q*p))*dx*y"},
          {"y*dy", "j^2*dy*y"},
          {"y*dx", "((j^2-q*p)/(1+q*p))*dy*x - ((j*p)/(1+q*p))*dx*y"},
          {"x*d2x", "j^2*d2x*x"},
          {"x*d2y", "(-(j*q)/(1+q*p))*d2y*x + ((j^2*q*p-1)/(1+q*p))*d2x*y"},
          {"y*d2y", "j^2*d2y*y"},
          {"y*d2x", "((j^2-q*p)/(1+q*p))*d2y*x - ((j*p)/(1+q*p))*d2x*y"},
          {"dx*d2x", "j*d2x*dx"},
          {"dx*d2y", "(-q/(1+q*p))*d2y*dx + ((j*q*p-j^2)/(1+q*p))*d2x*dy"},
          {"dy*d2y", "j*d2y*dy"},
          {"dy*d2x", "((j-j^2*q*p)/(1+q*p))*d2y*dx - (p/(1+q*p))*d2x*dy"},
          {"dx*dy", "q*dy*dx"},
          {"d2x*d2y", "q*d2y*d2x"},
          {"dx*dx*dx", "0", false},
          {"dy*dy*dy", "0", false},
      };
      break;
    case PresetId::SplaneQD2:
      specs = {
          {"x*theta", "q*theta*x"},
          {"theta*theta", "0"},
          {"x*dx", "(1/q^2)*dx*x"},
          {"x*dtheta", "(1/q)*dtheta*x"},
          {"theta*dtheta", "dtheta*theta"},
          {"theta*dx", "(1-1/q^2)*dtheta*x - (1/q)*dx*theta"},
          {"dx*dtheta", "(1/q)*dtheta*dx"},
          {"dx*dx", "0"},
      };
      break;
    case PresetId::SplanePQD2:
      specs = {
          {"x*theta", "q*theta*x"},
          {"theta*theta", "0"},
          {"x*dx", "(1/(q*p))*dx*x"},
          {"x*dtheta", "(1/p)*dtheta*x"},
          {"theta*dtheta", "dtheta*theta"},
          {"theta*dx", "(1-1/(q*p))*dtheta*x - (1/q)*dx*theta"},
          {"dx*dtheta", "(1/p)*dtheta*dx"},
          {"dx*dx", "0"},
      };
      break;
    case PresetId::SplaneQD3:
      specs = {
          {"x*theta", "q*theta*x"},
          {"theta*theta", "0"},
          {"x*dx", "j^2*dx*x"},
          {"x*dtheta",
           "(-(j*q)/(1+q^2))*dtheta*x + ((j^2*q^2-1)/(1+q^2))*dx*theta"},
          {"theta*dtheta", "dtheta*theta"},
          {"theta*dx",
           "((q^2-j^2)/(1+q^2))*dtheta*x + ((j*q)/(1+q^2))*dx*theta"},
          {"dx*dtheta", "-q*dtheta*dx"},
          {"dtheta*dtheta", "0"},
          {"x*d2x", "j^2*d2x*x"},
          {"x*d2theta",
           "(-(j*q)/(1+q^2))*d2theta*x + ((j^2*q^2-1)/(1+q^2))*d2x*theta"},
          {"theta*d2theta", "-d2theta*theta"},
          {"theta*d2x",
           "((j^2-q^2)/(1+q^2))*d2theta*x - ((j*q)/(1+q^2))*d2x*theta"},
          {"dx*d2x", "j*d2x*dx"},
          {"dx*d2theta",
           "(q/(1+q^2))*d2theta*dx + ((j*q^2-j^2)/(1+q^2))*d2x*dtheta"},
          {"dtheta*d2theta", "j^2*d2theta*dtheta"},
          {"dtheta*d2x",
           "((j^2*q^2-j)/(1+q^2))*d2theta*dx - (q/(1+q^2))*d2x*dtheta"},
          {"d2x*d2theta", "q*d2theta*d2x"},
          {"d2theta*d2theta", "0"},
      };
      break;
    case PresetId::SplanePQD3:
      specs = {
          {"x*theta", "q*theta*x"},
          {"theta*theta", "0"},
          {"x*dx", "j^2*dx*x"},
          {"x*dtheta",
           "(-(j*q)/(1+q*p))*dtheta*x + ((j^2*q*p-1)/(1+q*p))*dx*theta"},
          {"theta*dtheta", "dtheta*theta"},
          {"theta*dx",
           "((q*p-j^2)/(1+q*p))*dtheta*x + ((j*p)/(1+q*p))*dx*theta"},
          {"dx*dtheta", "-q*dtheta*dx"},
          {"dtheta*dtheta", "0"},
          {"x*d2x", "j^2*d2x*x"},
          {"x*d2theta",
           "(-(j*q)/(1+q*p))*d2theta*x + ((j^2*q*p-1)/(1+q*p))*d2x*theta"},
          {"theta*d2theta", "-d2theta*theta"},
          {"theta*d2x",
           "((j^2-q*p)/(1+q*p))*d2theta*x - ((j*p)/(1+q*p))*d2x*theta"},
          {"dx*d2x", "j*d2x*dx"},
          {"dx*d2theta",
           "(q/(1+q*p))*d2theta*dx + ((j*q*p-j^2)/(1+q*p))*d2x*dtheta"},
          {"dtheta*d2theta", "j^2*d2theta*dtheta"},
          {"dtheta*d2x",
           "((j^2*q*p-j)/(1+q*p))*d2theta*dx - (p/(1+q*p))*d2x*dtheta"},
          {"d2x*d2theta", "q*d2theta*d2x"},
          {"d2theta*d2theta", "0"},
      };
      break;
    case PresetId::GlPQ2:
      specs = {
          {"a*b", "p*b*a"},
          {"c*dgen", "p*dgen*c"},
          {"a*c", "q'*c*a"},
          {"b*dgen", "q'*dgen*b"},
          {"p*b*c", "q'*c*b"},
          {"a*dgen-dgen*a", "(p-1/q')*b*c"},
      };
      break;
    case PresetId::GlQ11:
      specs = {
          {"a*beta", "q*beta*a"},
          {"dgen*beta", "q*beta*dgen"},
          {"a*gamma", "q*gamma*a"},
          {"dgen*gamma", "q*gamma*dgen"},
          {"beta*gamma+gamma*beta", "0"},
          {"beta*beta", "0"},
          {"gamma*gamma", "0"},
          {"a*dgen-dgen*a", "(1/q-q)*beta*gamma"},
      };
      break;
    case PresetId::GlPQ11:
      specs = {
          {"a*beta", "p*beta*a"},
          {"dgen*beta", "p*beta*dgen"},
          {"a*gamma", "q'*gamma*a"},
          {"dgen*gamma", "q'*gamma*dgen"},
          {"p*beta*gamma+q'*gamma*beta", "0"},
          {"beta*beta", "0"},
          {"gamma*gamma", "0"},
          {"a*dgen-dgen*a", "(1/q'-p)*beta*gamma"},
      };
      break;
  }
  std::vector<SourceRelation> out;
  for (const auto& s : specs) {
    SourceRelation r;
    r.lhs = parse_element(s.lhs, P);
    r.rhs = parse_element(s.rhs, P);
    r.label = std::string(s.lhs) + " = " + s.rhs;
    r.covariant_block = s.covariant_block;
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace

const Presentation& preset(PresetId id) {
  static std::map<PresetId, Presentation> cache;
  auto it = cache.find(id);
  if (it == cache.end()) it = cache.emplace(id, make_preset(id)).first;
  return it->second;
}

const Presentation& preset(const std::string& name) {
  auto id = preset_from_name(name);
  if (!id) throw UnknownPresetError("unknown preset: " + name);
  return preset(*id);
}

const std::vector<SourceRelation>& source_relations(PresetId id) {
  static std::map<PresetId, std::vector<SourceRelation>> cache;
  auto it = cache.find(id);
  if (it == cache.end()) it = cache.emplace(id, make_relations(id)).first;
  return it->second;
}

Presentation specialize(const Presentation& P, const Bindings& bindings) {
  std::vector<RewriteRule> rules;
  for (const auto& r : P.rules()) {
    RewriteRule nr;
    nr.lhs = r.lhs;
    for (const auto& [w, c] : r.rhs.terms()) {
      try {
        nr.rhs.add(w, c.substitute(bindings));
      } catch (const PoleError&) {
        throw SpecializationError("substitution pole in rule " +
                                  P.word_str(r.lhs) + " -> " +
                                  P.element_str(r.rhs));
      }
    }
    rules.push_back(std::move(nr));
  }
  // recompute the parameters actually used
  std::set<int> used;
  for (const auto& r : rules)
    for (const auto& [w, c] : r.rhs.terms())
      for (int v = 0; v < kNumVars; ++v)
        if (c.uses(v)) used.insert(v);
  return Presentation(P.generators(), std::move(rules),
                      std::vector<int>(used.begin(), used.end()), P.notes());
}

std::vector<std::string> missing_pair_rules(const Presentation& P) {
  std::vector<std::string> out;
  int n = static_cast<int>(P.num_generators());
  for (int g = 0; g < n; ++g)
    for (int h = 0; h < g; ++h) {
      Word w{static_cast<uint8_t>(g), static_cast<uint8_t>(h)};
      if (!P.match_at(w, 0))
        out.push_back("no reordering rule for " + P.word_str(w));
    }
  return out;
}

}  // namespace qdiff
