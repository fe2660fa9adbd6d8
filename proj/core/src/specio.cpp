#include "nichols/specio.hpp"

#include <fstream>
#include <set>

namespace nichols {

using json = nlohmann::ordered_json;

namespace {

void rejectUnknown(const json& doc, const std::set<std::string>& allowed, const std::string& ctx) {
  for (auto& [k, v] : doc.items())
    if (!allowed.count(k)) throw SpecError("unknown field \"" + k + "\" in " + ctx);
}

FieldSpec parseField(const json& f) {
  rejectUnknown(f, {"mode", "N"}, "field spec");
  std::string mode = f.at("mode").get<std::string>();
  if (mode == "generic") return FieldSpec::generic();
  if (mode == "cyclotomic") return FieldSpec::cyclotomic(f.at("N").get<uint32_t>());
  throw SpecError("unknown field mode " + mode);
}

Fq scalar(const json& v, FieldSpec fs) { return parse_scalar(v.get<std::string>(), fs); }

}  // namespace

ParsedSpec parseBraidingSpec(const json& doc) {
  FieldSpec fs = parseField(doc.at("field"));
  std::string kind = doc.at("kind").get<std::string>();
  ParsedSpec out;
  json canon;
  canon["field"] = doc.at("field");
  canon["kind"] = kind;

  if (kind == "diagonal") {
    rejectUnknown(doc, {"field", "kind", "q"}, "diagonal spec");
    std::vector<std::vector<Fq>> q;
    json cq = json::array();
    for (const auto& row : doc.at("q")) {
      std::vector<Fq> r;
      json crow = json::array();
      for (const auto& e : row) {
        Fq x = scalar(e, fs);
        crow.push_back(x.str());
        r.push_back(std::move(x));
      }
      cq.push_back(std::move(crow));
      q.push_back(std::move(r));
    }
    canon["q"] = cq;
    out.space = BraidedSpace::diagonal(fs, std::move(q));
  } else if (kind == "block_point" || kind == "zv_block") {
    std::set<std::string> allowed = {"field", "kind", "epsilon", "a", "q12", "q21", "q22"};
    if (kind == "zv_block") allowed.insert("variant");
    rejectUnknown(doc, allowed, kind + " spec");
    BlockPointParams p;
    p.epsilon = doc.at("epsilon").get<int>();
    p.a = scalar(doc.at("a"), fs);
    p.q12 = scalar(doc.at("q12"), fs);
    p.q21 = scalar(doc.at("q21"), fs);
    p.q22 = scalar(doc.at("q22"), fs);
    canon["epsilon"] = p.epsilon;
    canon["a"] = p.a.str();
    canon["q12"] = p.q12.str();
    canon["q21"] = p.q21.str();
    canon["q22"] = p.q22.str();
    if (kind == "block_point") {
      out.space = BraidedSpace::blockPoint(p);
    } else {
      std::string variant = doc.at("variant").get<std::string>();
      canon["variant"] = variant;
      ZVKind k;
      if (variant == "weak_pm1") k = ZVKind::WeakPm1;
      else if (variant == "weak_omega") k = ZVKind::WeakOmega;
      else if (variant == "mild_cyclop") k = ZVKind::MildCyclop;
      else throw SpecError("unknown zv_block variant " + variant);
      out.space = BraidedSpace::zvBlock(k, p);
    }
    out.blockParams = std::move(p);
  } else if (kind == "cmatrix") {
    rejectUnknown(doc, {"field", "kind", "dim", "entries", "weights"}, "cmatrix spec");
    uint32_t dim = doc.at("dim").get<uint32_t>();
    std::vector<std::vector<std::vector<BraidedSpace::CEntry>>> c(
        dim, std::vector<std::vector<BraidedSpace::CEntry>>(dim));
    json ce = json::array();
    for (const auto& e : doc.at("entries")) {
      uint32_t i = e.at("i").get<uint32_t>(), j = e.at("j").get<uint32_t>();
      if (i < 1 || j < 1 || i > dim || j > dim) throw SpecError("cmatrix index out of range");
      json terms = json::array();
      for (const auto& t : e.at("terms")) {
        uint32_t k = t.at("k").get<uint32_t>(), l = t.at("l").get<uint32_t>();
        if (k < 1 || l < 1 || k > dim || l > dim) throw SpecError("cmatrix index out of range");
        Fq x = scalar(t.at("c"), fs);
        json tc;
        tc["k"] = k;
        tc["l"] = l;
        tc["c"] = x.str();
        terms.push_back(std::move(tc));
        c[i - 1][j - 1].push_back(
            {static_cast<Letter>(k - 1), static_cast<Letter>(l - 1), std::move(x)});
      }
      json ej;
      ej["i"] = i;
      ej["j"] = j;
      ej["terms"] = terms;
      ce.push_back(std::move(ej));
    }
    canon["dim"] = dim;
    canon["entries"] = ce;
    std::vector<uint32_t> weights;
    if (doc.contains("weights")) {
      weights = doc.at("weights").get<std::vector<uint32_t>>();
      canon["weights"] = weights;
    }
    out.space = BraidedSpace::fromCMatrix(fs, dim, std::move(c), std::move(weights));
  } else if (kind == "zu_rank2") {
    rejectUnknown(doc, {"field", "kind", "q", "bound"}, "zu_rank2 spec");
    std::vector<std::vector<Fq>> q;
    json cq = json::array();
    for (const auto& row : doc.at("q")) {
      std::vector<Fq> r;
      json crow = json::array();
      for (const auto& e : row) {
        Fq x = scalar(e, fs);
        crow.push_back(x.str());
        r.push_back(std::move(x));
      }
      cq.push_back(std::move(crow));
      q.push_back(std::move(r));
    }
    canon["q"] = cq;
    uint32_t bound = doc.contains("bound") ? doc.at("bound").get<uint32_t>() : 100;
    out.space = BraidedSpace::zuRank2(fs, q, bound);
  } else {
    throw SpecError("unknown braiding kind " + kind);
  }
  out.canonical = canon.dump();
  return out;
}

ParsedSpec parseBraidingSpecFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SpecError("cannot open spec file " + path);
  json doc;
  try {
    doc = json::parse(in);
  } catch (const std::exception& e) {
    throw SpecError("spec file " + path + ": " + e.what());
  }
  return parseBraidingSpec(doc);
}

SplitSpec parseSplitSpec(const json& doc, uint32_t dim) {
  rejectUnknown(doc, {"left"}, "split spec");
  SplitSpec s;
  for (const auto& e : doc.at("left")) s.left.push_back(e.get<uint32_t>());
  s.validate(dim);
  return s;
}

namespace {

BracketTree parseTree(const json& t) {
  if (t.is_number_integer()) return BracketTree::leaf(t.get<uint32_t>());
  if (t.is_array()) {
    if (t.size() == 2 && (t[0].is_array() || t[1].is_array())) {
      return BracketTree::br(parseTree(t[0]), parseTree(t[1]));
    }
    std::vector<uint32_t> letters;
    bool allInts = true;
    for (const auto& e : t)
      if (!e.is_number_integer()) allInts = false;
    if (allInts) {
      for (const auto& e : t) letters.push_back(e.get<uint32_t>());
      return iteratedWordBracket(letters);
    }
    if (t.size() == 2) return BracketTree::br(parseTree(t[0]), parseTree(t[1]));
    throw SpecError("malformed recipe tree");
  }
  throw SpecError("malformed recipe tree");
}

json treeToJson(const BracketTree& t) {
  if (t.letter >= 1) return t.letter;
  return json::array({treeToJson(*t.lhs), treeToJson(*t.rhs)});
}

}  // namespace

RootSystemData parseRootSystem(const json& doc) {
  RootSystemData rsd;
  for (const auto& r : doc.at("roots")) {
    RootDatum d;
    d.root = r.at("root").get<std::vector<uint32_t>>();
    d.recipe = parseTree(r.at("recipe"));
    rsd.roots.push_back(std::move(d));
  }
  return rsd;
}

json rootSystemToJson(const RootSystemData& rsd, const BraidedSpace& space) {
  json roots = json::array();
  auto ords = rsd.orders(space);
  for (std::size_t i = 0; i < rsd.roots.size(); ++i) {
    json r;
    r["root"] = rsd.roots[i].root;
    r["recipe"] = treeToJson(rsd.roots[i].recipe);
    r["order"] = ords[i] ? json(*ords[i]) : json("inf");
    roots.push_back(std::move(r));
  }
  json out;
  out["roots"] = roots;
  return out;
}

}  // namespace nichols
