#include "qdiff/differential.hpp"

#include <functional>
#include <random>

#include <json.hpp>

namespace qdiff {

CycloRat CalculusSpec::sign_of(int rank) const {
  const Generator& g = pres.gen(rank);
  CycloRat s = signbase.pow(g.degree);
  return (g.parity & 1) ? -s : s;
}

CycloRat CalculusSpec::sign_of(const Word& w) const {
  CycloRat s(1);
  for (uint8_t g : w) s *= sign_of(g);
  return s;
}

namespace {

// d-image generator name, or empty when d(g) = 0 at this nilpotency.
std::string dmap_name(const std::string& name, int degree, int nilpotency) {
  if (degree + 1 >= nilpotency) return "";
  if (degree == 0) return "d" + name;
  if (degree == 1) return "d2" + name.substr(1);
  return "";
}

}  // namespace

CalculusSpec calculus(PresetId id) {
  if (!is_calculus_preset(id))
    throw UnknownPresetError("not a calculus preset: " + preset_name(id));
  CalculusSpec C;
  C.pres = preset(id);
  C.nilpotency = preset_nilpotency(id);
  C.signbase = C.nilpotency == 2 ? CycloRat(-1) : CycloRat::j();
  C.dmap.resize(C.pres.num_generators());
  for (size_t r = 0; r < C.pres.num_generators(); ++r) {
    const Generator& g = C.pres.gen(static_cast<int>(r));
    std::string img = dmap_name(g.name, g.degree, C.nilpotency);
    if (img.empty()) continue;
    int ir = C.pres.rank_of(img);
    if (ir < 0) throw ValidationError("calculus image missing generator " + img);
    if (C.pres.gen(ir).degree != g.degree + 1)
      throw ValidationError("d must raise the degree by one: " + g.name);
    if (C.pres.gen(ir).parity != g.parity)
      throw ValidationError("d must preserve the Leibniz parity: " + g.name);
    C.dmap[r] = Element::from_word({static_cast<uint8_t>(ir)});
  }
  return C;
}

CalculusSpec specialize(const CalculusSpec& C, const Bindings& bindings) {
  CalculusSpec out = C;
  out.pres = specialize(C.pres, bindings);
  return out;
}

namespace {

// One free Leibniz expansion, no rewriting.
Element d_free(const Element& e, const CalculusSpec& C) {
  Element out;
  for (const auto& [w, c] : e.terms()) {
    CycloRat prefix_sign(1);
    for (size_t i = 0; i < w.size(); ++i) {
      const Element& img = C.dmap[w[i]];
      if (!img.is_zero()) {
        for (const auto& [iw, ic] : img.terms()) {
          Word nw;
          nw.reserve(w.size() - 1 + iw.size());
          nw.insert(nw.end(), w.begin(), w.begin() + i);
          nw.insert(nw.end(), iw.begin(), iw.end());
          nw.insert(nw.end(), w.begin() + i + 1, w.end());
          out.add(nw, c * ic * Scalar(prefix_sign));
        }
      }
      prefix_sign *= C.sign_of(w[i]);
    }
  }
  return out;
}

}  // namespace

Element d(const Element& e, const CalculusSpec& C) {
  return normalize(d_free(e, C), C.pres);
}

Element d_times(const Element& e, const CalculusSpec& C, int n) {
  // The iterates expand the graded Leibniz rule freely and reduce once at
  // the end.  Interleaving reduction steps would silently route d through
  // the word problem of the presented algebra, which in the non-associative
  // regimes is exactly what critical_pairs and check_leibniz measure.
  Element cur = e;
  for (int i = 0; i < n; ++i) cur = d_free(cur, C);
  return normalize(cur, C.pres);
}

namespace {

void enumerate_normal_words(const Presentation& P, int max_len, Word& w,
                            const std::function<void(const Word&)>& visit) {
  if (!w.empty()) visit(w);
  if (static_cast<int>(w.size()) >= max_len) return;
  for (size_t g = 0; g < P.num_generators(); ++g) {
    w.push_back(static_cast<uint8_t>(g));
    bool normal = true;
    if (w.size() >= 2 && P.match_at(w, w.size() - 2)) normal = false;
    if (normal && w.size() >= 3 && P.match_at(w, w.size() - 3)) normal = false;
    if (normal) enumerate_normal_words(P, max_len, w, visit);
    w.pop_back();
  }
}

Word random_word(const Presentation& P, int max_len, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> len_dist(1, max_len);
  std::uniform_int_distribution<int> gen_dist(
      0, static_cast<int>(P.num_generators()) - 1);
  Word w(len_dist(rng));
  for (auto& g : w) g = static_cast<uint8_t>(gen_dist(rng));
  return w;
}

}  // namespace

CheckReport check_nilpotency(const CalculusSpec& C, int max_len, int samples,
                             uint64_t seed) {
  CheckReport rep;
  auto test_word = [&](const Word& w) {
    if (!rep.pass) return;
    Element e = Element::from_word(w);
    Element res = d_times(e, C, C.nilpotency);
    ++rep.checked;
    if (!res.is_zero()) {
      rep.pass = false;
      rep.counterexamples.push_back(e);
      rep.details.push_back("d^" + std::to_string(C.nilpotency) + "(" +
                            C.pres.word_str(w) + ") != 0");
    }
  };
  Word w;
  enumerate_normal_words(C.pres, max_len, w, test_word);
  std::mt19937_64 rng(seed);
  for (int i = 0; i < samples && rep.pass; ++i)
    test_word(random_word(C.pres, 6, rng));

  // nondegeneracy witness: some generator with d^(n-1) != 0
  for (size_t r = 0; r < C.pres.num_generators() && !rep.witness; ++r) {
    Element e = Element::from_word({static_cast<uint8_t>(r)});
    if (!d_times(e, C, C.nilpotency - 1).is_zero()) rep.witness = e;
  }
  if (!rep.witness) {
    rep.pass = false;
    rep.details.push_back("degenerate: d^" + std::to_string(C.nilpotency - 1) +
                          " vanishes on every generator");
  }
  return rep;
}

Element leibniz_defect(const Element& u, const Element& v,
                       const CalculusSpec& C) {
  Element lhs = d(multiply(u, v, C.pres), C);
  Element rhs = multiply(d(u, C), v, C.pres);
  for (const auto& [uw, uc] : u.terms()) {
    Element tail = multiply(Element::from_word(uw), d(v, C), C.pres);
    rhs = rhs + tail.scaled(uc * Scalar(C.sign_of(uw)));
  }
  return lhs - rhs;
}

CheckReport check_leibniz(const CalculusSpec& C, int samples, uint64_t seed) {
  CheckReport rep;
  std::mt19937_64 rng(seed);
  for (int i = 0; i < samples; ++i) {
    Word uw = random_word(C.pres, 3, rng);
    Word vw = random_word(C.pres, 3, rng);
    Element u = Element::from_word(uw);
    Element v = Element::from_word(vw);
    Element defect = leibniz_defect(u, v, C);
    ++rep.checked;
    if (!defect.is_zero()) {
      rep.pass = false;
      if (rep.counterexamples.size() < 8) {
        rep.counterexamples.push_back(defect);
        rep.details.push_back("u = " + C.pres.word_str(uw) +
                              ", v = " + C.pres.word_str(vw));
      }
    }
  }
  return rep;
}

std::string CheckReport::to_json(const Presentation& P) const {
  nlohmann::json doc;
  doc["status"] = pass ? "pass" : "fail";
  doc["checked"] = checked;
  if (witness)
    doc["witness"] = nlohmann::json::parse(element_to_json(*witness, P));
  else
    doc["witness"] = nullptr;
  nlohmann::json ces = nlohmann::json::array();
  for (const auto& ce : counterexamples)
    ces.push_back(nlohmann::json::parse(element_to_json(ce, P)));
  doc["counterexamples"] = ces;
  if (!details.empty()) doc["details"] = details;
  return doc.dump(2);
}

}  // namespace qdiff
