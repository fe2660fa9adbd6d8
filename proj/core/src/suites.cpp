#include "nichols/suites.hpp"

#include <atomic>
#include <chrono>
#include <map>
#include <fstream>
#include <future>
#include <thread>

#include "nichols/cache.hpp"
#include "nichols/paperdata.hpp"
#include "nichols/sha256.hpp"
#include "nichols/specio.hpp"

namespace nichols {

using json = nlohmann::ordered_json;

namespace {

std::shared_ptr<NicholsModel> build(std::shared_ptr<const BraidedSpace> sp, uint32_t cutoff,
                                    EnginePath path = EnginePath::Derivation,
                                    uint32_t symCutoff = 8) {
  EngineConfig cfg;
  cfg.cutoff = cutoff;
  cfg.path = path;
  cfg.symmetrizerCutoff = symCutoff;
  return NicholsModel::build(std::move(sp), cfg);
}

void fillModel(Report& r, const NicholsModel& m, const std::string& specText) {
  r.engine = m.path() == EnginePath::Derivation ? "derivation" : "symmetrizer";
  r.hilbert = m.hilbert();
  json f;
  if (m.finiteness().finite) {
    f["finite"] = true;
    f["total"] = m.finiteness().totalDim;
  } else {
    f["finite"] = "unknown_at_cutoff";
  }
  r.finiteness = f;
  r.inputDigest = sha256Hex(specText);
}

void addCheck(Report& r, const std::string& name, bool pass, const std::string& anchor = "",
              const std::string& details = "") {
  r.checks.push_back({name, anchor, pass, details});
}

void addPresentationChecks(Report& r, const PresentationReport& rep, const std::string& anchor,
                           const std::string& prefix) {
  std::string failing;
  for (const auto& rr : rep.relations)
    if (!rr.pass) failing += rr.label + " ";
  addCheck(r, prefix + "relations", rep.relationsPass(), anchor,
           failing.empty() ? std::to_string(rep.relations.size()) + " instances"
                           : "failing: " + failing);
  std::string degs;
  for (const auto& d : rep.perDegree)
    if (!d.pass)
      degs += "n=" + std::to_string(d.degree) + " rank=" + std::to_string(d.lhs) +
              " dim=" + std::to_string(d.rhs) + "; ";
  addCheck(r, prefix + "pbw-independent-spanning", rep.basisPass(), anchor,
           degs.empty() ? std::to_string(rep.perDegree.size()) + " degrees" : degs);
  if (!rep.skipped.empty())
    addCheck(r, prefix + "skipped-beyond-cutoff", true, "",
             std::to_string(rep.skipped.size()) + " checks beyond the cutoff");
}

std::string gagSpecText(const std::vector<GagLabel>& labels) {
  json j;
  j["suite"] = "gag";
  json l = json::array();
  for (const auto& g : labels) l.push_back(json::array({g.a, g.b}));
  j["labels"] = l;
  return j.dump();
}

GrowthPrediction predictionFromPresentation(const Presentation& pres, const BraidedSpace& zvSpace,
                                            bool weighted) {
  GrowthPrediction p;
  for (const auto& g : pres.pbw) {
    uint32_t deg = 0;
    if (weighted) {
      for (Letter l : g.tensorValue.terms().front().first) deg += zvSpace.weightOf(l);
    } else {
      deg = g.degree;
    }
    p.generators.emplace_back(deg, g.bound ? *g.bound : 0);
  }
  return p;
}

// ------------------------------- gag suite ---------------------------------

std::vector<SuiteCase> gagCases(const std::string& corpusDir) {
  std::string path = nichols::corpusDir(corpusDir) + "/gag.json";
  std::ifstream in(path);
  if (!in) throw PaperDataError("cannot open " + path);
  json doc = json::parse(in);
  std::vector<SuiteCase> cases;
  for (const auto& c : doc.at("cases")) {
    std::string name = "gag/" + c.at("name").get<std::string>();
    json cc = c;
    cases.push_back({name, [name, cc]() {
      Report r;
      r.name = name;
      auto labelsOf = [](const json& arr) {
        std::vector<GagLabel> ls;
        for (const auto& l : arr) ls.push_back({l[0].get<int>(), l[1].get<int>()});
        return ls;
      };
      auto runOne = [&](const json& spec, const std::string& tag) {
        auto labels = labelsOf(spec.at("labels"));
        auto sp = corpus_gag(labels);
        auto m = build(sp, 40);
        if (tag.empty()) fillModel(r, *m, gagSpecText(labels));
        uint64_t dimW = spec.at("dimW").get<uint64_t>();
        uint64_t dimK = spec.at("dimK").get<uint64_t>();
        addCheck(r, tag + "braid-equation", check_braid_equation(*sp));
        addCheck(r, tag + "finite", m->finiteness().finite);
        addCheck(r, tag + "dim-BW", m->finiteness().finite && m->finiteness().totalDim == dimW,
                 "dim B(V + U) = " + std::to_string(dimW),
                 "computed " + std::to_string(m->finiteness().totalDim));
        auto fact = factorization_check(*m, {{1}});
        addCheck(r, tag + "factorization-bigraded", fact.bigradedPass,
                 "dim B(W) = dim B(Z_U) dim B(V)", fact.detail);
        bool dims = fact.dimensionPass && fact.dimK == dimK && fact.dimBV == 2;
        addCheck(r, tag + "dim-K", dims, "dim B(Z) = " + std::to_string(dimK),
                 "computed K " + std::to_string(fact.dimK ? *fact.dimK : 0));
        if (spec.value("zuEqualsU", false)) {
          auto zu = zu_basis(*m, {{1}});
          bool ok = zu.stopped && zu.layers.size() == 1 && zu.layers[0].size() == labels.size();
          addCheck(r, tag + "zu-equals-u", ok, "Z_U = U and K = B(U)");
        }
      };
      runOne(cc, "");
      if (cc.contains("subcollections")) {
        int k = 0;
        for (const auto& sub : cc.at("subcollections"))
          runOne(sub, "sub" + std::to_string(k++) + "/");
      }
      return r;
    }});
  }
  return cases;
}

// ------------------------------ rank-2 suite -------------------------------

std::vector<SuiteCase> rank2Cases(const std::string& corpusDir) {
  std::vector<SuiteCase> cases;
  struct Fam {
    const char* fam;
    const char* file;
  };
  for (Fam f : {Fam{"A2", "rank2-a2-zu"}, Fam{"B2", "rank2-b2-zu"}, Fam{"C2", "rank2-c2-zu"},
                Fam{"G2", "rank2-g2-zu"}, Fam{"G2rev", "rank2-g2rev-zu"}}) {
    std::string name = std::string("rank2/") + f.fam + "-generic";
    std::string fam = f.fam, file = f.file;
    cases.push_back({name, [name, fam, file, corpusDir]() {
      Report r;
      r.name = name;
      auto sp = cartan_space(fam, 2, FieldSpec::generic());
      auto m = build(sp, 8);
      fillModel(r, *m, "rank2-generic:" + fam);
      auto pres = presentation(*m, file, {}, corpusDir);
      auto rep = verify_presentation(*m, pres, 8);
      addPresentationChecks(r, rep, pres.anchor, "");
      auto rsd = roots_rank2(fam);
      auto pbw = pbw_check(*m, rsd);
      addCheck(r, "pbw-hilbert-product", pbw.hilbertPass,
               "x_{beta_l}^{n_l} ... x_{beta_1}^{n_1}", pbw.detail);
      addCheck(r, "pbw-full-basis", pbw.independencePass);
      auto conv = convexity_check(*m, rsd);
      addCheck(r, "convexity", conv.pass(), "[x_{beta_i}, x_{beta_j}]_c expands over intermediate roots");
      return r;
    }});
  }
  for (auto [fam, file, total, cutoff] :
       {std::tuple<const char*, const char*, uint64_t, uint32_t>{"B2", "rank2-b2-zu", 625, 30},
        std::tuple<const char*, const char*, uint64_t, uint32_t>{"G2", "rank2-g2-zu", 15625, 66}}) {
    std::string name = std::string("rank2/") + fam + "-cyclotomic5";
    std::string famS = fam, fileS = file;
    uint64_t totalS = total;
    uint32_t cut = cutoff;
    cases.push_back({name, [name, famS, fileS, totalS, cut, corpusDir]() {
      Report r;
      r.name = name;
      auto sp = cartan_space(famS, 2, FieldSpec::cyclotomic(5));
      auto m = build(sp, cut);
      fillModel(r, *m, "rank2-cyclo5:" + famS);
      addCheck(r, "finite", m->finiteness().finite, "detected as Finite");
      addCheck(r, "total-dimension",
               m->finiteness().finite && m->finiteness().totalDim == totalS,
               "total " + std::to_string(totalS),
               "computed " + std::to_string(m->finiteness().totalDim));
      auto h = m->hilbert();
      while (!h.empty() && h.back() == 0) h.pop_back();
      bool sym = true;
      for (std::size_t i = 0; i < h.size(); ++i) sym = sym && h[i] == h[h.size() - 1 - i];
      addCheck(r, "hilbert-symmetry", sym, "H(t) = t^top H(1/t)");
      auto rsd = roots_rank2(famS);
      auto pbw = pbw_check(*m, rsd);
      addCheck(r, "pbw-hilbert-product", pbw.hilbertPass, "product over the root list with N_beta = 5",
               pbw.detail);
      addCheck(r, "pbw-full-basis", pbw.independencePass);
      auto pres = presentation(*m, fileS, {}, corpusDir);
      auto rep = verify_presentation(*m, pres, 8);
      addPresentationChecks(r, rep, pres.anchor, "presentation/");
      return r;
    }});
  }
  return cases;
}

// ------------------------------ type A suite -------------------------------

struct CartanCase {
  std::string fam;       // A, B, C, D
  uint32_t theta;
  std::string file;
  bool qls = false;      // quantum-linear-space growth check
};

SuiteCase cartanPresentationCase(const CartanCase& cc, const std::string& corpusDir) {
  std::string name = "type" + cc.fam + "/theta" + std::to_string(cc.theta) + "/" + cc.file;
  return {name, [name, cc, corpusDir]() {
    Report r;
    r.name = name;
    auto sp = cartan_space(cc.fam, cc.theta, FieldSpec::generic());
    auto m = build(sp, 7);
    fillModel(r, *m, "cartan:" + cc.fam + std::to_string(cc.theta));
    PresentationParams params;
    params.ints["theta"] = cc.theta;
    auto pres = presentation(*m, cc.file, params, corpusDir);
    auto rep = verify_presentation(*m, pres, 7);
    addPresentationChecks(r, rep, pres.anchor, "");
    if (cc.qls) {
      // K is a quantum linear space on generators of degrees theta .. 1
      auto kdims = coinvariant_hilbert(*m, *pres.coinvariantSplit, 7);
      GrowthPrediction p;
      for (uint32_t d2 = 1; d2 <= cc.theta; ++d2) p.generators.emplace_back(d2, 0);
      auto g = gk_growth_estimate_dims(kdims, false, p);
      addCheck(r, "qls-growth",
               g.verdict == GrowthVerdict::Match && g.degree == cc.theta,
               "quantum linear space and GK-dim B(Z_U) = theta", g.detail);
    }
    return r;
  }};
}

SuiteCase cartanRootsCase(const std::string& fam, uint32_t theta) {
  std::string name = "type" + fam + "/theta" + std::to_string(theta) + "/roots";
  return {name, [name, fam, theta]() {
    Report r;
    r.name = name;
    auto sp = cartan_space(fam, theta, FieldSpec::generic());
    auto m = build(sp, 7);
    fillModel(r, *m, "cartan-roots:" + fam + std::to_string(theta));
    CartanType t = fam == "A"   ? CartanType::A
                   : fam == "B" ? CartanType::B
                   : fam == "C" ? CartanType::C
                                : CartanType::D;
    auto rsd = roots_cartan(t, theta);
    auto pbw = pbw_check(*m, rsd);
    addCheck(r, "pbw-hilbert-product", pbw.hilbertPass, "positive-root table", pbw.detail);
    addCheck(r, "pbw-full-basis", pbw.independencePass);
    auto conv = convexity_check(*m, rsd);
    bool sawPairs = !conv.pairs.empty();
    addCheck(r, "convexity-ore", conv.pass() && sawPairs,
             "[x_{beta_i}, x_{beta_j}]_c expands over intermediate roots (Ore shadow)",
             std::to_string(conv.pairs.size()) + " pairs within the cutoff");
    return r;
  }};
}

std::vector<SuiteCase> typeACases(const std::string& corpusDir) {
  std::vector<SuiteCase> cases;
  cases.push_back(cartanPresentationCase({"A", 3, "typeA-J1"}, corpusDir));
  cases.push_back(cartanPresentationCase({"A", 3, "typeA-J2-theta3"}, corpusDir));
  cases.push_back(cartanPresentationCase({"A", 3, "typeA-Jqls", true}, corpusDir));
  cases.push_back(cartanPresentationCase({"A", 4, "typeA-J1"}, corpusDir));
  cases.push_back(cartanPresentationCase({"A", 4, "typeA-Jqls", true}, corpusDir));
  cases.push_back(cartanRootsCase("A", 3));
  cases.push_back(cartanRootsCase("A", 4));
  return cases;
}

std::vector<SuiteCase> typeBCDCases(const std::string& corpusDir) {
  std::vector<SuiteCase> cases;
  for (const char* file : {"typeB-J1", "typeB-Jtheta", "typeB-Jqls", "typeB-J2theta"})
    cases.push_back(cartanPresentationCase({"B", 3, file}, corpusDir));
  for (const char* file : {"typeC-Jqls", "typeC-J2theta"})
    cases.push_back(cartanPresentationCase({"C", 3, file}, corpusDir));
  for (const char* file : {"typeD-Jqls", "typeD-J2theta"})
    cases.push_back(cartanPresentationCase({"D", 4, file}, corpusDir));
  cases.push_back(cartanRootsCase("B", 3));
  cases.push_back(cartanRootsCase("C", 3));
  cases.push_back(cartanRootsCase("D", 4));
  return cases;
}

// ---------------------------- block-point suite -----------------------------

struct LstrCase {
  std::string name;
  std::string file;
  int eps;
  int q22;               // +1 / -1; 3 = omega
  long ghost;            // discrete ghost
  ZVKind kind;
  uint32_t zvCutoff;     // q12 = 1 instance
  uint32_t zvCutoffGen;  // generic q12 instance
  uint32_t expectedGrowth;
};

BlockPointParams lstrParams(const LstrCase& c, FieldSpec fs, Fq q12) {
  BlockPointParams p;
  p.epsilon = c.eps;
  p.a = c.eps == 1 ? Fq::rational(fs, -c.ghost, 2) : Fq::integer(fs, c.ghost);
  p.q12 = q12;
  p.q21 = c.kind == ZVKind::MildCyclop ? -q12.inv() : q12.inv();
  if (c.q22 == 3) p.q22 = Fq::q(fs);  // primitive third root in Cyclotomic(3)
  else p.q22 = Fq::integer(fs, c.q22);
  return p;
}

SuiteCase lstrCase(const LstrCase& c, const std::string& corpusDir) {
  std::string name = "blockpoint/" + c.name;
  return {name, [name, c, corpusDir]() {
    Report r;
    r.name = name;
    bool omega = c.q22 == 3;
    FieldSpec fsRat = omega ? FieldSpec::cyclotomic(3) : FieldSpec::generic();
    Fq q12rat = omega ? Fq::q(fsRat) : Fq::one(fsRat);
    auto pRat = lstrParams(c, fsRat, q12rat);
    auto zvRat = BraidedSpace::zvBlock(c.kind, pRat);
    auto mz = build(zvRat, c.zvCutoff, EnginePath::Symmetrizer, c.zvCutoff);
    fillModel(r, *mz, "zv:" + name);
    addCheck(r, "zv-braid-equation", check_braid_equation(*zvRat),
             "stated Z_V braiding satisfies the braid equation");

    PresentationParams params;
    params.ints["G"] = c.ghost;
    params.scalars["q12"] = pRat.q12;
    params.scalars["q21"] = pRat.q21;
    if (omega) params.scalars["omega"] = pRat.q22;
    auto pres = presentation(*mz, c.file, params, corpusDir);
    auto rep = verify_presentation(*mz, pres, c.zvCutoff);
    addPresentationChecks(r, rep, pres.anchor, "zv/");

    auto pred = predictionFromPresentation(pres, *zvRat, false);
    auto g = gk_growth_estimate(*mz, pred);
    addCheck(r, "growth-estimate",
             g.verdict == GrowthVerdict::Match && g.degree == c.expectedGrowth,
             "GK-dim B(Z_V) = " + std::to_string(c.expectedGrowth), g.detail);

    // generic-q12 instance pins the q12-dependence of every coefficient
    {
      FieldSpec fsg = omega ? FieldSpec::cyclotomic(3) : FieldSpec::generic();
      Fq q12g = omega ? Fq::q(fsg) : Fq::q(fsg);
      if (omega) q12g = Fq::q(fsg).pow(2);  // a second valid instance over the same field
      auto pg = lstrParams(c, fsg, q12g);
      auto zvg = BraidedSpace::zvBlock(c.kind, pg);
      auto mg = build(zvg, c.zvCutoffGen, EnginePath::Symmetrizer, c.zvCutoffGen);
      PresentationParams paramsg;
      paramsg.ints["G"] = c.ghost;
      paramsg.scalars["q12"] = pg.q12;
      paramsg.scalars["q21"] = pg.q21;
      if (omega) paramsg.scalars["omega"] = pg.q22;
      auto presg = presentation(*mg, c.file, paramsg, corpusDir);
      auto repg = verify_presentation(*mg, presg, c.zvCutoffGen);
      addPresentationChecks(r, repg, presg.anchor, "zv-generic-q12/");
    }

    // B(W) side: derivation model of the block-and-point space
    FieldSpec fsW = omega ? FieldSpec::cyclotomic(3) : FieldSpec::generic();
    Fq q12W = omega ? Fq::q(fsW) : Fq::q(fsW);
    auto pW = lstrParams(c, fsW, q12W);
    auto w = BraidedSpace::blockPoint(pW);
    auto mw = build(w, 8);
    TensorVector jordanRel;
    if (c.eps == 1) {
      jordanRel.add({1, 0}, Fq::one(fsW));
      jordanRel.add({0, 1}, -Fq::one(fsW));
      jordanRel.add({0, 0}, Fq::rational(fsW, 1, 2));
      jordanRel.normalize();
      addCheck(r, "jordan-relation-in-BW", mw->is_relation(jordanRel),
               "x_2x_1 - x_1x_2 + 1/2 x_1^2");
    } else {
      TensorVector x1 = TensorVector::letter(0, fsW);
      TensorVector x2 = TensorVector::letter(1, fsW);
      TensorVector x21 = x2 * x1 + x1 * x2;
      addCheck(r, "superjordan-x1sq-in-BW", mw->is_relation(x1 * x1), "x_1^2");
      addCheck(r, "superjordan-cubic-in-BW",
               mw->is_relation(x2 * x21 - x21 * x2 - x1 * x21),
               "x_2x_{21} - x_{21}x_2 - x_1x_{21}");
    }
    // the bosonization tower terminates exactly at the ghost
    if (c.kind == ZVKind::WeakPm1) {
      long top = c.eps == 1 ? c.ghost : 2 * c.ghost;
      bool nonzeroBelow = true;
      for (long t = 1; t <= top && t + 1 <= 8; ++t)
        if (mw->project(named_element(*w, "zt", {t})).isZero()) nonzeroBelow = false;
      bool zeroAtTop = top + 2 <= 8
                           ? mw->project(named_element(*w, "zt", {top + 1})).isZero()
                           : true;
      addCheck(r, "zt-tower-termination-in-BW", nonzeroBelow && zeroAtTop,
               "zt_{G+1} = 0 (resp. zt_{2G+1} = 0), nonzero below");
    }
    // coinvariant dims of the point split reproduce the weighted Z_V prefix
    auto kd = coinvariant_hilbert(*mw, {{3}}, 6);
    std::map<uint32_t, uint64_t> weighted;
    for (const auto& [grade, dim] : mz->bihilbert()) weighted[grade[0]] += dim;
    bool same = true;
    std::string detail;
    for (uint32_t n2 = 0; n2 <= 6; ++n2) {
      uint64_t a = kd[n2];
      uint64_t b = weighted.count(n2) ? weighted[n2] : 0;
      if (a != b) {
        same = false;
        detail += "deg " + std::to_string(n2) + ": K " + std::to_string(a) + " vs Z_V " +
                  std::to_string(b) + "; ";
      }
    }
    addCheck(r, "coinvariant-matches-zv-hilbert", same,
             "symmetrizer engine on the raw matrix reproduces the coinvariant Hilbert prefix",
             detail);
    // the K-side Hilbert prefix equals the PBW-claim expansion in the W grading
    auto kd8 = coinvariant_hilbert(*mw, {{3}}, 8);
    auto predW = predictionFromPresentation(pres, *zvRat, true);
    auto series = predW.seriesPrefix(8);
    bool hseries = true;
    std::string hdetail;
    for (uint32_t n2 = 0; n2 <= 8; ++n2) {
      uint64_t want = series[n2].fits_ulong_p() ? series[n2].get_ui() : ~0ull;
      if (want != kd8[n2]) {
        hseries = false;
        hdetail += "deg " + std::to_string(n2) + ": K " + std::to_string(kd8[n2]) + " vs claim " +
                   std::to_string(want) + "; ";
      }
    }
    addCheck(r, "hilbert-matches-pbw-claim", hseries,
             "Hilbert prefix equals the PBW expansion of the basis claim", hdetail);
    auto fact = factorization_check(*mw, {{3}});
    addCheck(r, "factorization-bigraded", fact.bigradedPass, "B(W) = K # B(V)", fact.detail);
    return r;
  }};
}

std::vector<SuiteCase> blockpointCases(const std::string& corpusDir) {
  std::vector<SuiteCase> cases;
  for (long g : {1L, 2L}) {
    cases.push_back(lstrCase({"lstr-plus-plus-G" + std::to_string(g), "lstr-plus-plus", 1, 1, g,
                              ZVKind::WeakPm1, 8, 6, static_cast<uint32_t>(2 + g)},
                             corpusDir));
    cases.push_back(lstrCase({"lstr-plus-minus-G" + std::to_string(g), "lstr-plus-minus", 1, -1, g,
                              ZVKind::WeakPm1, 8, 6, 2},
                             corpusDir));
    cases.push_back(lstrCase({"lstr-minus-plus-G" + std::to_string(g), "lstr-minus-plus", -1, 1, g,
                              ZVKind::WeakPm1, 8, 6, static_cast<uint32_t>(2 + g)},
                             corpusDir));
    cases.push_back(lstrCase({"lstr-minus-minus-G" + std::to_string(g), "lstr-minus-minus", -1, -1,
                              g, ZVKind::WeakPm1, 8, 6, static_cast<uint32_t>(2 + g)},
                             corpusDir));
  }
  cases.push_back(
      lstrCase({"lstr-omega", "lstr-omega", 1, 3, 1, ZVKind::WeakOmega, 6, 5, 2}, corpusDir));
  cases.push_back(
      lstrCase({"cyclop", "cyclop", -1, -1, 1, ZVKind::MildCyclop, 6, 5, 2}, corpusDir));
  return cases;
}

// --------------------------- engine-oracle suite ----------------------------

std::vector<SuiteCase> engineOracleCases(const std::string& corpusDir) {
  struct Entry {
    std::string name;
    std::function<std::shared_ptr<BraidedSpace>()> make;
    uint32_t depth = 6;
  };
  std::vector<Entry> spaces;
  spaces.push_back({"gag-pair-13", [] { return corpus_gag({{1, 3}}); }, 6});
  spaces.push_back({"gag-triple-claim3a", [] { return corpus_gag({{1, 3}, {1, 2}}); }, 6});
  spaces.push_back({"gag-theta0", [] { return corpus_gag({{1, 2}, {3, 2}}); }, 6});
  for (const char* fam : {"A2", "B2", "C2", "G2", "G2rev"}) {
    std::string n = std::string("rank2-") + fam;
    std::string f = fam;
    spaces.push_back({n, [f] { return cartan_space(f, 2, FieldSpec::generic()); }, 6});
  }
  spaces.push_back({"rank2-B2-cyclo5", [] { return cartan_space("B2", 2, FieldSpec::cyclotomic(5)); }, 6});
  spaces.push_back({"rank2-G2-cyclo5", [] { return cartan_space("G2", 2, FieldSpec::cyclotomic(5)); }, 6});
  spaces.push_back({"A3", [] { return cartan_space("A", 3, FieldSpec::generic()); }, 6});
  spaces.push_back({"B3", [] { return cartan_space("B", 3, FieldSpec::generic()); }, 6});
  spaces.push_back({"C3", [] { return cartan_space("C", 3, FieldSpec::generic()); }, 6});
  spaces.push_back({"A4", [] { return cartan_space("A", 4, FieldSpec::generic()); }, 6});
  spaces.push_back({"D4", [] { return cartan_space("D", 4, FieldSpec::generic()); }, 6});
  for (int eps : {1, -1}) {
    for (long gh : {1L, 2L}) {
      std::string n = "blockpoint-eps" + std::string(eps == 1 ? "p" : "m") + "-G" + std::to_string(gh);
      spaces.push_back({n, [eps, gh] {
        FieldSpec fs = FieldSpec::generic();
        Fq q = Fq::q(fs);
        BlockPointParams p;
        p.epsilon = eps;
        p.a = eps == 1 ? Fq::rational(fs, -gh, 2) : Fq::integer(fs, gh);
        p.q12 = q;
        p.q21 = q.inv();
        p.q22 = Fq::one(fs);
        return BraidedSpace::blockPoint(p);
      }, 6});
    }
  }
  std::vector<SuiteCase> cases;
  for (const auto& e : spaces) {
    std::string name = "engine-oracle/" + e.name;
    cases.push_back({name, [name, e]() {
      Report r;
      r.name = name;
      auto sp = e.make();
      auto md = build(sp, e.depth, EnginePath::Derivation);
      auto ms = build(sp, e.depth, EnginePath::Symmetrizer, e.depth);
      fillModel(r, *md, "engine-oracle:" + name);
      bool same = true;
      std::string detail;
      for (uint32_t n = 0; n <= e.depth; ++n) {
        if (md->dim(n) != ms->dim(n)) {
          same = false;
          detail += "n=" + std::to_string(n) + ": " + std::to_string(md->dim(n)) + " vs " +
                    std::to_string(ms->dim(n)) + "; ";
        }
      }
      addCheck(r, "derivation-vs-symmetrizer", same,
               "derivation-path dims equal symmetrizer ranks", detail);
      return r;
    }});
  }
  return cases;
}

}  // namespace

std::vector<std::string> suiteNames() {
  return {"gag", "rank2", "typeA", "typeBCD", "blockpoint", "engine-oracle", "all"};
}

std::vector<SuiteCase> suiteCases(const std::string& suiteName, const std::string& corpusDir) {
  std::vector<SuiteCase> cases;
  auto append = [&](std::vector<SuiteCase> more) {
    for (auto& c : more) cases.push_back(std::move(c));
  };
  if (suiteName == "gag" || suiteName == "all") append(gagCases(corpusDir));
  if (suiteName == "rank2" || suiteName == "all") append(rank2Cases(corpusDir));
  if (suiteName == "typeA" || suiteName == "all") append(typeACases(corpusDir));
  if (suiteName == "typeBCD" || suiteName == "all") append(typeBCDCases(corpusDir));
  if (suiteName == "blockpoint" || suiteName == "all") append(blockpointCases(corpusDir));
  if (suiteName == "engine-oracle" || suiteName == "all") append(engineOracleCases(corpusDir));
  if (cases.empty()) throw PaperDataError("unknown suite " + suiteName);
  return cases;
}

std::vector<Report> runSuite(const std::string& suiteName, const std::string& corpusDir,
                             unsigned jobs) {
  auto cases = suiteCases(suiteName, corpusDir);
  if (jobs == 0) jobs = std::max(1u, std::thread::hardware_concurrency());
  jobs = std::min<unsigned>(jobs, static_cast<unsigned>(cases.size()));
  std::vector<Report> out(cases.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (;;) {
      std::size_t i = next.fetch_add(1);
      if (i >= cases.size()) return;
      auto t0 = std::chrono::steady_clock::now();
      Report r;
      try {
        r = cases[i].run();
      } catch (const std::exception& e) {
        r.name = cases[i].name;
        addCheck(r, "exception", false, "", e.what());
      }
      r.seconds =
          std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      out[i] = std::move(r);
    }
  };
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < jobs; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  return out;
}

}  // namespace nichols
