#include "nichols/paperdata.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <sstream>

#include <json.hpp>

namespace nichols {

namespace {
using json = nlohmann::ordered_json;
}

std::shared_ptr<BraidedSpace> corpus_gag(const std::vector<GagLabel>& uLabels) {
  FieldSpec c4 = FieldSpec::cyclotomic(4);
  Fq q = Fq::q(c4);
  std::vector<GagLabel> labels;
  labels.push_back({1, 2});  // V = k^2_1
  labels.insert(labels.end(), uLabels.begin(), uLabels.end());
  std::size_t n = labels.size();
  std::vector<std::vector<Fq>> m(n, std::vector<Fq>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      long e = ((labels[i].a * labels[j].b) % 4 + 4) % 4;
      m[i][j] = q.pow(e);
    }
  return BraidedSpace::diagonal(c4, m);
}

namespace {

std::vector<uint32_t> range(uint32_t a, uint32_t b) {  // inclusive, auto direction
  std::vector<uint32_t> v;
  if (a <= b)
    for (uint32_t k = a; k <= b; ++k) v.push_back(k);
  else
    for (uint32_t k = a;; --k) {
      v.push_back(k);
      if (k == b) break;
    }
  return v;
}

std::vector<uint32_t> cat(std::vector<uint32_t> a, const std::vector<uint32_t>& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

struct RootBuild {
  std::vector<uint32_t> word;  // ordering key
  RootDatum datum;
};

std::vector<uint32_t> multidegOf(const std::vector<uint32_t>& word, uint32_t theta) {
  std::vector<uint32_t> m(theta, 0);
  for (uint32_t l : word) m[l - 1] += 1;
  return m;
}

RootSystemData sortAndStrip(std::vector<RootBuild> builds) {
  std::sort(builds.begin(), builds.end(),
            [](const RootBuild& x, const RootBuild& y) { return x.word < y.word; });
  RootSystemData rsd;
  for (auto& b : builds) rsd.roots.push_back(std::move(b.datum));
  return rsd;
}

}  // namespace

RootSystemData roots_cartan(CartanType type, uint32_t theta) {
  std::vector<RootBuild> builds;
  auto wordRoot = [&](const std::vector<uint32_t>& letters) {
    RootBuild b;
    b.word = letters;
    b.datum.root = multidegOf(letters, theta);
    b.datum.recipe = iteratedWordBracket(letters);
    return b;
  };
  auto addDeg = [&](std::vector<uint32_t> a, const std::vector<uint32_t>& b) {
    for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
    return a;
  };

  switch (type) {
    case CartanType::A: {
      if (theta < 2) throw PaperDataError("type A needs theta >= 2");
      for (uint32_t k = 1; k <= theta; ++k)
        for (uint32_t j = k; j <= theta; ++j) builds.push_back(wordRoot(range(k, j)));
      break;
    }
    case CartanType::B: {
      if (theta < 3) throw PaperDataError("type B needs theta >= 3");
      for (uint32_t i = 1; i <= theta; ++i)
        for (uint32_t j = i; j <= theta; ++j) builds.push_back(wordRoot(range(i, j)));
      // alpha_{i theta} + alpha_{j theta}, i < j; recipe peels x_j off the left chain
      for (uint32_t i = 1; i < theta; ++i) {
        // j = theta: [x_{(i theta)}, x_theta]
        RootBuild b;
        b.word = cat(range(i, theta), {theta});
        b.datum.root = multidegOf(b.word, theta);
        b.datum.recipe =
            BracketTree::br(iteratedWordBracket(range(i, theta)), BracketTree::leaf(theta));
        builds.push_back(std::move(b));
        BracketTree prev =
            BracketTree::br(iteratedWordBracket(range(i, theta)), BracketTree::leaf(theta));
        std::vector<uint32_t> prevRoot =
            addDeg(multidegOf(range(i, theta), theta), multidegOf({theta}, theta));
        for (uint32_t j = theta - 1; j > i; --j) {
          BracketTree cur = BracketTree::br(prev.clone(), BracketTree::leaf(j));
          RootBuild c;
          c.word = cat(range(i, theta), range(j, theta));
          c.datum.root = addDeg(prevRoot, multidegOf({j}, theta));
          c.datum.recipe = cur.clone();
          prevRoot = c.datum.root;
          builds.push_back(std::move(c));
          prev = std::move(cur);
        }
      }
      break;
    }
    case CartanType::C: {
      if (theta < 3) throw PaperDataError("type C needs theta >= 3");
      for (uint32_t i = 1; i <= theta; ++i)
        for (uint32_t j = i; j <= theta; ++j) builds.push_back(wordRoot(range(i, j)));
      // alpha_{i theta} + alpha_{j theta-1}, i <= j <= theta-1
      for (uint32_t i = 1; i + 1 <= theta; ++i) {
        // diagonal j = i: [x_{(i theta)}, x_{(i theta-1)}]
        {
          RootBuild b;
          b.word = cat(range(i, theta), range(i, theta - 1));
          b.datum.root = multidegOf(b.word, theta);
          b.datum.recipe = BracketTree::br(iteratedWordBracket(range(i, theta)),
                                           iteratedWordBracket(range(i, theta - 1)));
          builds.push_back(std::move(b));
        }
        if (i == theta - 1) continue;
        // j = theta-1: [x_{(i theta)}, x_{theta-1}], then peel down to j > i
        BracketTree prev = BracketTree::br(iteratedWordBracket(range(i, theta)),
                                           BracketTree::leaf(theta - 1));
        std::vector<uint32_t> prevRoot =
            addDeg(multidegOf(range(i, theta), theta), multidegOf({theta - 1}, theta));
        {
          RootBuild b;
          b.word = cat(range(i, theta), range(theta - 1, theta - 1));
          b.datum.root = prevRoot;
          b.datum.recipe = prev.clone();
          builds.push_back(std::move(b));
        }
        for (uint32_t j = theta - 2; j > i; --j) {
          BracketTree cur = BracketTree::br(prev.clone(), BracketTree::leaf(j));
          RootBuild c;
          c.word = cat(range(i, theta), range(j, theta - 1));
          c.datum.root = addDeg(prevRoot, multidegOf({j}, theta));
          c.datum.recipe = cur.clone();
          prevRoot = c.datum.root;
          builds.push_back(std::move(c));
          prev = std::move(cur);
        }
      }
      break;
    }
    case CartanType::D: {
      if (theta < 4) throw PaperDataError("type D needs theta >= 4");
      for (uint32_t i = 1; i <= theta; ++i)
        for (uint32_t j = i; j <= theta; ++j) {
          if (i == theta - 1 && j == theta) continue;
          if (j == theta && i <= theta - 2) continue;  // special recipe below
          builds.push_back(wordRoot(range(i, j)));
        }
      for (uint32_t i = 1; i <= theta - 2; ++i) {
        // alpha_{i,theta-2} + alpha_theta = [x_{(i,theta-2)}, x_theta]
        BracketTree short1 = BracketTree::br(iteratedWordBracket(range(i, theta - 2)),
                                             BracketTree::leaf(theta));
        std::vector<uint32_t> shortRoot =
            addDeg(multidegOf(range(i, theta - 2), theta), multidegOf({theta}, theta));
        {
          RootBuild b;
          b.word = cat(range(i, theta - 2), {theta});
          b.datum.root = shortRoot;
          b.datum.recipe = short1.clone();
          builds.push_back(std::move(b));
        }
        // alpha_{i theta} = [previous, x_{theta-1}]
        BracketTree aTheta = BracketTree::br(short1.clone(), BracketTree::leaf(theta - 1));
        std::vector<uint32_t> aThetaRoot = addDeg(shortRoot, multidegOf({theta - 1}, theta));
        {
          RootBuild b;
          b.word = cat(cat(range(i, theta - 2), {theta}), {theta - 1});
          b.datum.root = aThetaRoot;
          b.datum.recipe = aTheta.clone();
          builds.push_back(std::move(b));
        }
        // alpha_{i theta} + alpha_{j, theta-2}, i < j <= theta-2
        BracketTree prev = aTheta.clone();
        std::vector<uint32_t> prevRoot = aThetaRoot;
        for (uint32_t j = theta - 2; j > i; --j) {
          BracketTree cur = BracketTree::br(prev.clone(), BracketTree::leaf(j));
          RootBuild c;
          c.word = cat(cat(cat(range(i, theta - 2), {theta}), {theta - 1}),
                       range(theta - 2, j));
          c.datum.root = addDeg(prevRoot, multidegOf({j}, theta));
          c.datum.recipe = cur.clone();
          prevRoot = c.datum.root;
          builds.push_back(std::move(c));
          prev = std::move(cur);
        }
      }
      break;
    }
  }
  return sortAndStrip(std::move(builds));
}

RootSystemData roots_rank2(const std::string& family) {
  RootSystemData rsd;
  auto W = [](std::initializer_list<uint32_t> l) {
    return iteratedWordBracket(std::vector<uint32_t>(l));
  };
  if (family == "A2") {
    rsd.roots.push_back({{1, 0}, W({1})});
    rsd.roots.push_back({{1, 1}, W({1, 2})});
    rsd.roots.push_back({{0, 1}, W({2})});
  } else if (family == "B2") {
    rsd.roots.push_back({{1, 0}, W({1})});
    rsd.roots.push_back({{2, 1}, W({1, 1, 2})});
    rsd.roots.push_back({{1, 1}, W({1, 2})});
    rsd.roots.push_back({{0, 1}, W({2})});
  } else if (family == "C2") {
    rsd.roots.push_back({{1, 0}, W({1})});
    rsd.roots.push_back({{1, 1}, W({1, 2})});
    rsd.roots.push_back({{1, 2}, BracketTree::br(W({1, 2}), BracketTree::leaf(2))});
    rsd.roots.push_back({{0, 1}, W({2})});
  } else if (family == "G2") {
    rsd.roots.push_back({{1, 0}, W({1})});
    rsd.roots.push_back({{3, 1}, W({1, 1, 1, 2})});
    rsd.roots.push_back({{2, 1}, W({1, 1, 2})});
    rsd.roots.push_back({{3, 2}, BracketTree::br(W({1, 1, 2}), W({1, 2}))});
    rsd.roots.push_back({{1, 1}, W({1, 2})});
    rsd.roots.push_back({{0, 1}, W({2})});
  } else if (family == "G2rev") {
    // u_10 = [x_{12}, x_2], u_100 = [u_10, x_2], u_110 = [x_{12}, u_10]
    BracketTree u10 = BracketTree::br(W({1, 2}), BracketTree::leaf(2));
    rsd.roots.push_back({{1, 0}, W({1})});
    rsd.roots.push_back({{1, 1}, W({1, 2})});
    rsd.roots.push_back({{2, 3}, BracketTree::br(W({1, 2}), u10.clone())});
    rsd.roots.push_back({{1, 2}, u10.clone()});
    rsd.roots.push_back({{1, 3}, BracketTree::br(u10.clone(), BracketTree::leaf(2))});
    rsd.roots.push_back({{0, 1}, W({2})});
  } else {
    throw PaperDataError("unknown rank-2 family " + family);
  }
  return rsd;
}

std::shared_ptr<BraidedSpace> cartan_space(const std::string& family, uint32_t theta,
                                           FieldSpec fs) {
  Fq q = Fq::q(fs);
  Fq one = Fq::one(fs);
  auto diag = [&](uint32_t n, auto qii, auto qtilde) {
    // upper entries carry the full qtilde, lower entries are 1
    std::vector<std::vector<Fq>> m(n, std::vector<Fq>(n, one));
    for (uint32_t i = 0; i < n; ++i) m[i][i] = qii(i + 1);
    for (uint32_t i = 0; i < n; ++i)
      for (uint32_t j = i + 1; j < n; ++j) m[i][j] = qtilde(i + 1, j + 1);
    return BraidedSpace::diagonal(fs, m);
  };
  if (family == "A2" || family == "A")
    return diag(family == "A2" ? 2 : theta, [&](uint32_t) { return q; },
                [&](uint32_t i, uint32_t j) { return j == i + 1 ? q.inv() : one; });
  if (family == "B2")
    return diag(2, [&](uint32_t i) { return i == 1 ? q : q.pow(2); },
                [&](uint32_t, uint32_t) { return q.pow(-2); });
  if (family == "C2")
    return diag(2, [&](uint32_t i) { return i == 1 ? q.pow(2) : q; },
                [&](uint32_t, uint32_t) { return q.pow(-2); });
  if (family == "G2")
    return diag(2, [&](uint32_t i) { return i == 1 ? q : q.pow(3); },
                [&](uint32_t, uint32_t) { return q.pow(-3); });
  if (family == "G2rev")
    return diag(2, [&](uint32_t i) { return i == 1 ? q.pow(3) : q; },
                [&](uint32_t, uint32_t) { return q.pow(-3); });
  if (family == "B")
    return diag(theta, [&](uint32_t i) { return i == theta ? q : q.pow(2); },
                [&](uint32_t i, uint32_t j) { return j == i + 1 ? q.pow(-2) : one; });
  if (family == "C")
    return diag(theta, [&](uint32_t i) { return i == theta ? q.pow(2) : q; },
                [&](uint32_t i, uint32_t j) {
                  return j == i + 1 ? (j == theta ? q.pow(-2) : q.inv()) : one;
                });
  if (family == "D")
    return diag(theta, [&](uint32_t) { return q; },
                [&](uint32_t i, uint32_t j) {
                  if (j == i + 1 && j <= theta - 1) return q.inv();
                  if (i == theta - 2 && j == theta) return q.inv();
                  return one;
                });
  throw PaperDataError("unknown Cartan family " + family);
}

// --------------------------------- corpus ----------------------------------

std::string corpusDir(const std::string& overridePath) {
  if (!overridePath.empty()) return overridePath;
  if (const char* env = std::getenv("NICHOLS_CORPUS_DIR")) return env;
#ifdef NICHOLS_DEFAULT_CORPUS_DIR
  return NICHOLS_DEFAULT_CORPUS_DIR;
#else
  return "corpus";
#endif
}

namespace {

json loadFamily(const std::string& family, const std::string& dir) {
  std::string path = corpusDir(dir) + "/" + family + ".json";
  std::ifstream in(path);
  if (!in) throw PaperDataError("cannot open corpus file " + path);
  try {
    return json::parse(in);
  } catch (const std::exception& e) {
    throw PaperDataError("corpus file " + path + ": " + e.what());
  }
}

// iterate the forall varlist with nested inclusive ranges and a where clause
void forEachAssignment(const json& forallSpec, const json* whereSpec, ExprEval& env,
                       const std::function<void()>& fn) {
  std::function<void(std::size_t)> rec = [&](std::size_t idx) {
    if (idx == forallSpec.size()) {
      if (whereSpec) {
        for (const auto& w : *whereSpec)
          if (!env.evalCond(w.get<std::string>())) return;
      }
      fn();
      return;
    }
    const auto& v = forallSpec[idx];
    std::string var = v.at("var").get<std::string>();
    long from = env.evalInt(v.at("from").get<std::string>());
    if (v.contains("downto")) {
      long to = env.evalInt(v.at("downto").get<std::string>());
      for (long k = from; k >= to; --k) {
        env.ints()[var] = k;
        rec(idx + 1);
      }
    } else {
      long to = env.evalInt(v.at("to").get<std::string>());
      for (long k = from; k <= to; ++k) {
        env.ints()[var] = k;
        rec(idx + 1);
      }
    }
    env.ints().erase(var);
  };
  rec(0);
}

std::string substIndices(const std::string& label, const ExprEval& env, const json& forallSpec) {
  std::string out = label;
  for (const auto& v : forallSpec) {
    std::string var = v.at("var").get<std::string>();
    auto it = env.ints().find(var);
    if (it != env.ints().end()) out += "[" + var + "=" + std::to_string(it->second) + "]";
  }
  return out;
}

void checkOrderConstraint(const std::string& kind, const Fq& q) {
  auto ord = mult_order(q);
  bool ok = false;
  if (kind == "ne1") ok = !(q.isOne());
  else if (kind == "gt2_or_inf") ok = !ord || *ord > 2;
  else if (kind == "gt3_or_inf") ok = !ord || *ord > 3;
  else if (kind == "odd_gt4_or_inf") ok = !ord || (*ord > 4 && *ord % 2 == 1);
  else if (kind == "gt2_even_unsupported") ok = !ord || *ord > 2;
  else throw PaperDataError("unknown order constraint kind " + kind);
  if (!ok)
    throw PaperDataError("parameter violates the family's order constraint (" + kind + ")");
}

}  // namespace

Presentation presentation(const NicholsModel& model, const std::string& family,
                          const PresentationParams& params, const std::string& dir) {
  const BraidedSpace& sp = model.space();
  json doc = loadFamily(family, dir);

  ExprEval env(sp);
  env.ints() = params.ints;
  env.scalars() = params.scalars;
  env.ints()["dim"] = sp.dim();

  // family-declared named scalars (e.g. "q": "qq(theta,theta)")
  if (doc.contains("scalar_defs"))
    for (auto& [name, expr] : doc.at("scalar_defs").items())
      env.scalars()[name] = env.evalScalar(expr.get<std::string>());

  if (doc.contains("int_constraints"))
    for (const auto& c : doc.at("int_constraints"))
      if (!env.evalCond(c.get<std::string>()))
        throw PaperDataError(family + ": parameter constraint violated: " + c.get<std::string>());

  if (doc.contains("order_constraints"))
    for (const auto& c : doc.at("order_constraints"))
      checkOrderConstraint(c.at("kind").get<std::string>(),
                           env.evalScalar(c.at("scalar").get<std::string>()));

  if (doc.contains("generators"))
    for (const auto& g : doc.at("generators")) {
      ExprEval::GenDef def;
      if (g.contains("args"))
        for (const auto& a : g.at("args")) def.args.push_back(a.get<std::string>());
      def.expr = g.at("expr").get<std::string>();
      env.gens()[g.at("name").get<std::string>()] = std::move(def);
    }

  Presentation pres;
  pres.family = family;
  pres.anchor = doc.value("paper_anchor", "");
  if (doc.contains("coinvariant_left")) {
    SplitSpec split;
    for (const auto& e : doc.at("coinvariant_left")) {
      std::string t = e.get<std::string>();
      auto dots = t.find("..");
      if (dots == std::string::npos) {
        split.left.push_back(static_cast<uint32_t>(env.evalInt(t)));
      } else {
        long a = env.evalInt(t.substr(0, dots));
        long b = env.evalInt(t.substr(dots + 2));
        for (long k = a; k <= b; ++k) split.left.push_back(static_cast<uint32_t>(k));
      }
    }
    pres.coinvariantSplit = split;
  }

  static const json emptyForall = json::array();
  for (const auto& r : doc.at("relations")) {
    const json& fa = r.contains("forall") ? r.at("forall") : emptyForall;
    const json* where = r.contains("where") ? &r.at("where") : nullptr;
    forEachAssignment(fa, where, env, [&]() {
      Presentation::Rel rel;
      rel.label = substIndices(r.value("label", "rel"), env, fa);
      rel.anchor = r.value("anchor", "");
      rel.value = env.evalTensor(r.at("expr").get<std::string>());
      pres.relations.push_back(std::move(rel));
    });
  }

  for (const auto& g : doc.at("pbw")) {
    const json& fa = g.contains("forall") ? g.at("forall") : emptyForall;
    const json* where = g.contains("where") ? &g.at("where") : nullptr;
    forEachAssignment(fa, where, env, [&]() {
      Presentation::PbwGen gen;
      gen.label = substIndices(g.value("label", "gen"), env, fa);
      gen.tensorValue = env.evalTensor(g.at("expr").get<std::string>());
      if (gen.tensorValue.isZero())
        throw PaperDataError(family + ": PBW generator " + gen.label + " evaluates to zero");
      gen.degree = static_cast<uint32_t>(gen.tensorValue.length());
      std::string bound = g.at("bound").get<std::string>();
      if (bound == "inf") {
        gen.bound = std::nullopt;
      } else if (bound.rfind("ord(", 0) == 0) {
        Fq s = env.evalScalar(bound.substr(4, bound.size() - 5));
        gen.bound = mult_order(s);  // nullopt when infinite
      } else {
        gen.bound = static_cast<uint32_t>(env.evalInt(bound));
      }
      gen.value = model.project(gen.tensorValue);
      pres.pbw.push_back(std::move(gen));
    });
  }
  return pres;
}

TensorVector named_element(const BraidedSpace& space, const std::string& name,
                           const std::vector<long>& args,
                           const std::map<std::string, long>& ints) {
  ExprEval env(space);
  env.ints() = ints;
  auto def = [&](const char* n, std::vector<std::string> as, const char* e) {
    env.gens()[n] = {std::move(as), e};
  };
  def("u", {"n"}, "ad(x(1))^n(x(2))");
  def("z", {"t"}, "ad(x(3))^t(x(2))");
  def("y3weak", {}, "ad(x(3))(x(2))");
  def("zt", {"t"}, "fold(y3weak(); k = 2 upto t; [acc, x(2)])");
  def("w", {"i"}, "x(i..1)");
  def("wtB", {"j"}, "x(j..theta, theta..1)");
  def("wtC", {"j"}, "[x(theta..j), w(theta-1)]");
  def("wtD", {}, "[x(theta), w(theta-2)]");
  def("v", {"j"}, "[[x(theta), x(theta-2..j)], w(theta-1)]");
  def("xkl", {"k", "l"}, "x(k..l)");
  def("y_weak", {"i"}, "");  // handled below
  def("y_mild", {"i"}, "");

  if (name == "y_weak" || name == "y_mild") {
    if (args.size() != 1) throw PaperDataError("y_* takes one index");
    long i = args[0];
    if (i == 1 || i == 2) return env.evalTensor("x(" + std::to_string(i) + ")");
    if (name == "y_weak") return env.evalTensor("ad(x(3))^" + std::to_string(i - 2) + "(x(2))");
    if (i == 3) return env.evalTensor("ad(x(3))(x(1))");
    if (i == 4) return env.evalTensor("ad(x(3))(x(2))");
    throw PaperDataError("y_mild index out of range");
  }
  auto it = env.gens().find(name);
  if (it == env.gens().end()) throw PaperDataError("unknown named element " + name);
  std::string call = name + "(";
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (i) call += ",";
    call += std::to_string(args[i]);
  }
  call += ")";
  return env.evalTensor(call);
}

bool PresentationReport::relationsPass() const {
  for (const auto& r : relations)
    if (!r.pass) return false;
  return true;
}

bool PresentationReport::basisPass() const {
  for (const auto& d : perDegree)
    if (!d.pass) return false;
  return true;
}

std::string PresentationReport::summary() const {
  std::ostringstream os;
  std::size_t relFail = 0;
  for (const auto& r : relations)
    if (!r.pass) ++relFail;
  os << relations.size() << " relations (" << relFail << " failing); ";
  std::size_t degFail = 0;
  for (const auto& d : perDegree)
    if (!d.pass) ++degFail;
  os << perDegree.size() << " degrees (" << degFail << " failing)";
  if (!skipped.empty()) os << "; " << skipped.size() << " checks beyond cutoff";
  return os.str();
}

PresentationReport verify_presentation(const NicholsModel& m, const Presentation& p,
                                       uint32_t cutoff) {
  PresentationReport rep;
  if (cutoff > m.cutoff() && !m.finiteness().finite)
    throw PaperDataError("verification cutoff exceeds the model cutoff");

  // (R) relations
  for (const auto& r : p.relations) {
    if (!r.value.isZero() && r.value.length() > cutoff && !m.finiteness().finite) {
      rep.skipped.push_back(r.label);
      continue;
    }
    rep.relations.push_back({r.label, m.is_relation(r.value)});
  }
  // power relations from bounded PBW generators
  for (const auto& g : p.pbw) {
    if (!g.bound) continue;
    uint64_t deg = static_cast<uint64_t>(*g.bound) * g.degree;
    if (deg > cutoff && !m.finiteness().finite) {
      rep.skipped.push_back(g.label + "^" + std::to_string(*g.bound));
      continue;
    }
    ModelElt pw = m.pow(g.value, *g.bound);
    rep.relations.push_back({g.label + "^" + std::to_string(*g.bound), pw.isZero()});
  }

  // target dimensions; for coinvariant targets every PBW generator must lie
  // in the coinvariant algebra, otherwise rank/count equalities prove nothing
  std::vector<uint64_t> target;
  if (p.coinvariantSplit) {
    target = coinvariant_hilbert(m, *p.coinvariantSplit, cutoff);
    for (const auto& g : p.pbw) {
      bool in = true;
      for (uint32_t l : p.coinvariantSplit->left)
        if (!m.derive(static_cast<Letter>(l - 1), g.value).isZero()) in = false;
      rep.relations.push_back({g.label + " in K", in});
    }
  } else {
    for (uint32_t n = 0; n <= cutoff; ++n) target.push_back(m.dim(n));
  }

  // (I)+(S): monomials in list order with bounded exponents, built rightmost
  // factor first so every multiplication prepends a short lift
  std::vector<std::vector<ModelElt>> monos(cutoff + 1);
  std::function<void(long, uint32_t, const ModelElt&)> gen = [&](long idx, uint32_t deg,
                                                                 const ModelElt& partial) {
    monos[deg].push_back(partial);
    for (long g = idx; g >= 0; --g) {
      uint32_t ht = p.pbw[g].degree;
      if (deg + ht > cutoff) continue;
      ModelElt power = p.pbw[g].value;
      for (uint32_t e = 1;; ++e) {
        if (p.pbw[g].bound && e >= *p.pbw[g].bound) break;
        uint32_t nd = deg + e * ht;
        if (nd > cutoff) break;
        gen(g - 1, nd, m.multiply(power, partial));
        if (nd + ht <= cutoff && !(p.pbw[g].bound && e + 1 >= *p.pbw[g].bound))
          power = m.multiply(p.pbw[g].value, power);
      }
    }
  };
  gen(static_cast<long>(p.pbw.size()) - 1, 0, m.one());

  for (uint32_t n = 0; n <= cutoff; ++n) {
    std::vector<SparseVec> vecs;
    for (const auto& e : monos[n]) vecs.push_back(e.coords);
    uint64_t rank = rankOf(vecs);
    bool pass = rank == vecs.size() && rank == target[n];
    rep.perDegree.push_back({n, pass, rank, target[n]});
  }
  return rep;
}

}  // namespace nichols
