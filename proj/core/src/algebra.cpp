#include "qdiff/algebra.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include <json.hpp>

#include "qdiff/parser.hpp"

namespace qdiff {

bool word_deglex_less(const Word& a, const Word& b) {
  return WordDegLexLess{}(a, b);
}

// ---------------------------------------------------------------------------
// Element

Element Element::from_word(Word w, Scalar c) {
  Element e;
  if (!c.is_zero()) e.t_[std::move(w)] = std::move(c);
  return e;
}

void Element::add(const Word& w, const Scalar& c) {
  if (c.is_zero()) return;
  auto it = t_.find(w);
  if (it == t_.end()) {
    t_[w] = c;
  } else {
    it->second += c;
    if (it->second.is_zero()) t_.erase(it);
  }
}

Element operator+(const Element& a, const Element& b) {
  Element r = a;
  for (const auto& [w, c] : b.t_) r.add(w, c);
  return r;
}

Element operator-(const Element& a, const Element& b) {
  Element r = a;
  for (const auto& [w, c] : b.t_) r.add(w, -c);
  return r;
}

Element operator-(const Element& a) {
  Element r;
  for (const auto& [w, c] : a.t_) r.t_[w] = -c;
  return r;
}

Element Element::scaled(const Scalar& c) const {
  Element r;
  if (c.is_zero()) return r;
  for (const auto& [w, x] : t_) r.t_[w] = x * c;
  return r;
}

Element concat(const Element& a, const Element& b) {
  Element r;
  for (const auto& [wa, ca] : a.t_)
    for (const auto& [wb, cb] : b.t_) {
      Word w = wa;
      w.insert(w.end(), wb.begin(), wb.end());
      r.add(w, ca * cb);
    }
  return r;
}

// ---------------------------------------------------------------------------
// Presentation

Presentation::Presentation(std::vector<Generator> gens,
                           std::vector<RewriteRule> rules,
                           std::vector<int> params,
                           std::vector<std::string> notes)
    : gens_(std::move(gens)),
      rules_(std::move(rules)),
      params_(std::move(params)),
      notes_(std::move(notes)) {
  index();
  validate();
}

void Presentation::index() {
  name2rank_.clear();
  pair_rule_.clear();
  triple_rule_.clear();
  for (size_t i = 0; i < gens_.size(); ++i) {
    if (name2rank_.count(gens_[i].name))
      throw ValidationError("duplicate generator name: " + gens_[i].name);
    name2rank_[gens_[i].name] = static_cast<int>(i);
  }
  for (size_t i = 0; i < rules_.size(); ++i) {
    const Word& l = rules_[i].lhs;
    if (l.size() == 2) {
      uint16_t key = static_cast<uint16_t>((l[0] << 8) | l[1]);
      if (pair_rule_.count(key))
        throw ValidationError("duplicate rule for ordered pair " + word_str(l));
      pair_rule_[key] = static_cast<int>(i);
    } else if (l.size() == 3) {
      uint32_t key = (static_cast<uint32_t>(l[0]) << 16) |
                     (static_cast<uint32_t>(l[1]) << 8) | l[2];
      if (triple_rule_.count(key))
        throw ValidationError("duplicate rule for word " + word_str(l));
      triple_rule_[key] = static_cast<int>(i);
    }
  }
}

void Presentation::validate() const {
  if (gens_.size() > 255) throw ValidationError("too many generators");
  for (const auto& r : rules_) {
    if (r.lhs.size() != 2 && r.lhs.size() != 3)
      throw ValidationError("rule lhs must have length 2 or 3");
    for (uint8_t g : r.lhs)
      if (g >= gens_.size())
        throw ValidationError("rule references unknown generator");
    for (const auto& [w, c] : r.rhs.terms()) {
      for (uint8_t g : w)
        if (g >= gens_.size())
          throw ValidationError("rule rhs references unknown generator");
      if (!word_deglex_less(w, r.lhs))
        throw ValidationError("non-decreasing rule at " + word_str(r.lhs) +
                              " -> " + word_str(w));
    }
  }
}

int Presentation::rank_of(const std::string& name) const {
  auto it = name2rank_.find(name);
  return it == name2rank_.end() ? -1 : it->second;
}

const RewriteRule* Presentation::match_at(const Word& w, size_t pos) const {
  if (pos + 2 <= w.size()) {
    uint16_t key = static_cast<uint16_t>((w[pos] << 8) | w[pos + 1]);
    auto it = pair_rule_.find(key);
    if (it != pair_rule_.end()) return &rules_[it->second];
  }
  if (pos + 3 <= w.size()) {
    uint32_t key = (static_cast<uint32_t>(w[pos]) << 16) |
                   (static_cast<uint32_t>(w[pos + 1]) << 8) | w[pos + 2];
    auto it = triple_rule_.find(key);
    if (it != triple_rule_.end()) return &rules_[it->second];
  }
  return nullptr;
}

int Presentation::word_degree(const Word& w) const {
  int d = 0;
  for (uint8_t g : w) d += gens_[g].degree;
  return d;
}

int Presentation::word_parity(const Word& w) const {
  int p = 0;
  for (uint8_t g : w) p += gens_[g].parity;
  return p & 1;
}

Word Presentation::word_from_names(const std::vector<std::string>& names) const {
  Word w;
  for (const auto& n : names) {
    int r = rank_of(n);
    if (r < 0) throw ValidationError("unknown generator: " + n);
    w.push_back(static_cast<uint8_t>(r));
  }
  return w;
}

std::string Presentation::word_str(const Word& w) const {
  if (w.empty()) return "1";
  std::string s;
  for (uint8_t g : w) {
    if (!s.empty()) s += "*";
    s += g < gens_.size() ? gens_[g].name : "?";
  }
  return s;
}

std::string Presentation::element_str(const Element& e) const {
  if (e.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [w, c] : e.terms()) {
    std::string piece;
    if (w.empty()) {
      piece = c.str();
    } else if (c.is_one()) {
      piece = word_str(w);
    } else if (c == Scalar(-1)) {
      piece = "-" + word_str(w);
    } else {
      piece = "(" + c.str() + ")*" + word_str(w);
    }
    if (first) {
      os << piece;
      first = false;
    } else if (!piece.empty() && piece[0] == '-') {
      os << " - " << piece.substr(1);
    } else {
      os << " + " << piece;
    }
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// Rewriting

static Element apply_rule_at(const Word& w, size_t pos, const RewriteRule& r) {
  Element out;
  for (const auto& [rw, rc] : r.rhs.terms()) {
    Word nw;
    nw.reserve(w.size() - r.lhs.size() + rw.size());
    nw.insert(nw.end(), w.begin(), w.begin() + pos);
    nw.insert(nw.end(), rw.begin(), rw.end());
    nw.insert(nw.end(), w.begin() + pos + r.lhs.size(), w.end());
    out.add(nw, rc);
  }
  return out;
}

Element normalize(const Element& e, const Presentation& P, Strategy strategy) {
  Element out;
  // worklist of pending (word, coefficient) terms
  std::vector<std::pair<Word, Scalar>> work(e.terms().begin(), e.terms().end());
  while (!work.empty()) {
    auto [w, c] = std::move(work.back());
    work.pop_back();
    if (c.is_zero()) continue;
    size_t pos = static_cast<size_t>(-1);
    if (strategy == Strategy::Leftmost) {
      for (size_t i = 0; i + 2 <= w.size(); ++i)
        if (P.match_at(w, i)) {
          pos = i;
          break;
        }
    } else if (w.size() >= 2) {
      for (size_t i = w.size() - 2;; --i) {
        if (P.match_at(w, i)) {
          pos = i;
          break;
        }
        if (i == 0) break;
      }
    }
    if (pos == static_cast<size_t>(-1)) {
      out.add(w, c);
      continue;
    }
    const RewriteRule* r = P.match_at(w, pos);
    for (const auto& [rw, rc] : r->rhs.terms()) {
      Word nw;
      nw.reserve(w.size() - r->lhs.size() + rw.size());
      nw.insert(nw.end(), w.begin(), w.begin() + pos);
      nw.insert(nw.end(), rw.begin(), rw.end());
      nw.insert(nw.end(), w.begin() + pos + r->lhs.size(), w.end());
      work.emplace_back(std::move(nw), c * rc);
    }
  }
  return out;
}

Element multiply(const Element& a, const Element& b, const Presentation& P) {
  return normalize(concat(a, b), P);
}

std::vector<Obstruction> critical_pairs(const Presentation& P) {
  std::vector<Obstruction> out;
  std::set<std::pair<Word, std::string>> seen;
  const auto& rules = P.rules();
  for (size_t i = 0; i < rules.size(); ++i) {
    const Word& l1 = rules[i].lhs;
    for (size_t j = 0; j < rules.size(); ++j) {
      const Word& l2 = rules[j].lhs;
      // place l2 starting at offset o inside/after l1
      for (size_t o = 0; o < l1.size(); ++o) {
        if (o == 0 && i == j) continue;
        if (o == 0 && l2.size() >= l1.size()) continue;  // only proper prefix
        size_t ovl = std::min(l1.size() - o, l2.size());
        if (!std::equal(l1.begin() + o, l1.begin() + o + ovl, l2.begin()))
          continue;
        Word w(l1.begin(), l1.end());
        if (o + l2.size() > l1.size())
          w.insert(w.end(), l2.begin() + ovl, l2.end());
        Element pathA = normalize(apply_rule_at(w, 0, rules[i]), P);
        Element pathB = normalize(apply_rule_at(w, o, rules[j]), P);
        Element diff = pathA - pathB;
        if (diff.is_zero()) continue;
        std::string key = P.element_str(diff);
        if (seen.emplace(w, key).second) out.push_back({w, std::move(diff)});
      }
    }
  }
  std::sort(out.begin(), out.end(), [](const Obstruction& a, const Obstruction& b) {
    return word_deglex_less(a.overlap, b.overlap);
  });
  return out;
}

// ---------------------------------------------------------------------------
// JSON

using nlohmann::json;

static json element_to_json_obj(const Element& e, const Presentation& P) {
  json terms = json::array();
  for (const auto& [w, c] : e.terms()) {
    json names = json::array();
    for (uint8_t g : w) names.push_back(P.gen(g).name);
    terms.push_back({{"coeff", c.str()}, {"word", names}});
  }
  return json{{"terms", terms}};
}

static Element element_from_json_obj(const json& obj, const Presentation& P) {
  Element e;
  for (const auto& t : obj.at("terms")) {
    std::vector<std::string> names = t.at("word").get<std::vector<std::string>>();
    Word w = P.word_from_names(names);
    Scalar c = parse_scalar(t.at("coeff").get<std::string>());
    e.add(w, c);
  }
  return e;
}

std::string presentation_to_json(const Presentation& P) {
  json gens = json::array();
  for (const auto& g : P.generators())
    gens.push_back({{"name", g.name}, {"degree", g.degree}, {"parity", g.parity}});
  json rules = json::array();
  for (const auto& r : P.rules()) {
    json lhs = json::array();
    for (uint8_t g : r.lhs) lhs.push_back(P.gen(g).name);
    json rhs = json::array();
    for (const auto& [w, c] : r.rhs.terms()) {
      json names = json::array();
      for (uint8_t g : w) names.push_back(P.gen(g).name);
      rhs.push_back({{"coeff", c.str()}, {"word", names}});
    }
    rules.push_back({{"lhs", lhs}, {"rhs", rhs}});
  }
  json params = json::array();
  for (int v : P.params()) params.push_back(var_names()[v]);
  json doc{{"generators", gens}, {"rules", rules}, {"params", params}};
  if (!P.notes().empty()) doc["notes"] = P.notes();
  return doc.dump(2);
}

Presentation presentation_from_json(const std::string& text) {
  json doc = json::parse(text);
  std::vector<Generator> gens;
  for (const auto& g : doc.at("generators"))
    gens.push_back(Generator{g.at("name").get<std::string>(),
                             g.at("degree").get<int>(),
                             g.at("parity").get<int>()});
  std::vector<int> params;
  for (const auto& p : doc.value("params", json::array())) {
    int v = var_index(p.get<std::string>());
    if (v < 0) throw ValidationError("unknown parameter: " + p.get<std::string>());
    params.push_back(v);
  }
  std::vector<std::string> notes;
  if (doc.contains("notes")) notes = doc["notes"].get<std::vector<std::string>>();

  // build a skeleton first so rule words can be resolved by name
  Presentation skeleton(gens, {}, params, notes);
  std::vector<RewriteRule> rules;
  for (const auto& r : doc.at("rules")) {
    RewriteRule rr;
    rr.lhs = skeleton.word_from_names(r.at("lhs").get<std::vector<std::string>>());
    for (const auto& t : r.at("rhs")) {
      Word w = skeleton.word_from_names(t.at("word").get<std::vector<std::string>>());
      rr.rhs.add(w, parse_scalar(t.at("coeff").get<std::string>()));
    }
    rules.push_back(std::move(rr));
  }
  return Presentation(gens, rules, params, notes);
}

std::string element_to_json(const Element& e, const Presentation& P) {
  return element_to_json_obj(e, P).dump(2);
}

Element element_from_json(const std::string& text, const Presentation& P) {
  return element_from_json_obj(json::parse(text), P);
}

}  // namespace qdiff
