// Acceptance gate: one pass/fail line per criterion, nonzero exit on failure.
// Exact arithmetic throughout; every tolerance is exact equality.

#include <chrono>
#include <iostream>
#include <random>

#include "nichols/suites.hpp"
#include "nichols/paperdata.hpp"
#include "test_support.hpp"

using namespace nichols;

namespace {

struct Line {
  std::string name;
  bool pass;
  double seconds;
  std::string detail;
};

bool suitePasses(const std::string& name, std::string& detail,
                 const std::function<bool(const Report&)>& filter = nullptr) {
  auto reports = runSuite(name, "", 2);
  bool all = true;
  std::size_t counted = 0;
  for (const auto& r : reports) {
    if (filter && !filter(r)) continue;
    ++counted;
    if (!r.pass()) {
      all = false;
      detail += r.name + ": ";
      for (const auto& c : r.checks)
        if (!c.pass) detail += c.name + " ";
      detail += "| ";
    }
  }
  detail += std::to_string(counted) + " cases";
  return all && counted > 0;
}

// ----- criterion 7: randomized property suites, >= 200 cases each -----

bool propBraidEquation(std::string& detail) {
  std::mt19937 rng(211);
  int cases = 0, bad = 0;
  while (cases < 200) {
    std::uniform_int_distribution<int> rankD(1, 3), nD(2, 7);
    std::shared_ptr<BraidedSpace> sp;
    if (cases % 2 == 0) {
      sp = testing::randomRootOfUnityDiagonal(rng, rankD(rng), nD(rng), 6);
    } else {
      FieldSpec fs = FieldSpec::generic();
      BlockPointParams p;
      p.epsilon = cases % 4 < 2 ? 1 : -1;
      std::uniform_int_distribution<int> num(-4, 4);
      p.a = Fq::rational(fs, num(rng), 2);
      p.q12 = testing::randomNonzero(rng, fs);
      p.q21 = testing::randomNonzero(rng, fs);
      p.q22 = testing::randomNonzero(rng, fs);
      sp = BraidedSpace::blockPoint(p);
    }
    if (!check_braid_equation(*sp)) ++bad;
    ++cases;
  }
  detail = std::to_string(cases) + " spaces, " + std::to_string(bad) + " failures";
  return bad == 0;
}

bool propFieldAxioms(std::string& detail) {
  std::mt19937 rng(223);
  int bad = 0;
  for (int t = 0; t < 200; ++t) {
    FieldSpec fs = t % 2 ? FieldSpec::cyclotomic(2 + t % 9) : FieldSpec::generic();
    Fq a = testing::randomLaurent(rng, fs), b = testing::randomLaurent(rng, fs),
       c = testing::randomLaurent(rng, fs);
    if (!((a + b) + c == a + (b + c))) ++bad;
    if (!((a * b) * c == a * (b * c))) ++bad;
    if (!(a * (b + c) == a * b + a * c)) ++bad;
    if (!a.isZero() && !(a * a.inv()).isOne()) ++bad;
  }
  detail = "200 triples, " + std::to_string(bad) + " failures";
  return bad == 0;
}

bool propPascal(std::string& detail) {
  std::mt19937 rng(227);
  int bad = 0;
  for (int t = 0; t < 200; ++t) {
    FieldSpec fs = t % 2 ? FieldSpec::cyclotomic(2 + t % 9) : FieldSpec::generic();
    Fq x = testing::randomNonzero(rng, fs);
    std::uniform_int_distribution<uint32_t> nD(2, 12);
    uint32_t n = nD(rng);
    std::uniform_int_distribution<uint32_t> kD(1, n - 1);
    uint32_t k = kD(rng);
    if (!(q_binomial(n, k, x) ==
          q_binomial(n - 1, k - 1, x) + x.pow(k) * q_binomial(n - 1, k, x)))
      ++bad;
  }
  detail = "200 evaluations, " + std::to_string(bad) + " failures";
  return bad == 0;
}

bool propMultiply(std::string& detail) {
  std::mt19937 rng(229);
  FieldSpec fs = FieldSpec::generic();
  Fq q = Fq::q(fs);
  EngineConfig cfg;
  cfg.cutoff = 6;
  std::vector<std::shared_ptr<NicholsModel>> models;
  models.push_back(
      NicholsModel::build(BraidedSpace::diagonal(fs, {{q, Fq::qpow(fs, 2)}, {q.pow(-3), q}}), cfg));
  BlockPointParams p;
  p.epsilon = -1;
  p.a = Fq::integer(fs, 1);
  p.q12 = q;
  p.q21 = q.inv();
  p.q22 = Fq::one(fs);
  models.push_back(NicholsModel::build(BraidedSpace::blockPoint(p), cfg));
  int bad = 0;
  for (int t = 0; t < 200; ++t) {
    const auto& m = *models[t % models.size()];
    std::uniform_int_distribution<uint32_t> len(1, 2);
    TensorVector a = testing::randomTensor(rng, m.space(), len(rng), 2);
    TensorVector b = testing::randomTensor(rng, m.space(), len(rng), 2);
    TensorVector c = testing::randomTensor(rng, m.space(), len(rng), 2);
    ModelElt pa = m.project(a), pb = m.project(b), pc = m.project(c);
    if (!(m.multiply(m.multiply(pa, pb), pc).coords == m.multiply(pa, m.multiply(pb, pc)).coords))
      ++bad;
    if (!(m.multiply(pa, pb).coords == m.project(a * b).coords)) ++bad;
  }
  detail = "200 triples, " + std::to_string(bad) + " failures";
  return bad == 0;
}

bool propSeparation(std::string& detail) {
  std::mt19937 rng(233);
  int cases = 0, bad = 0;
  while (cases < 200) {
    auto sp = testing::randomRootOfUnityDiagonal(rng, 2 + cases % 2, 3 + cases % 5, 6);
    EngineConfig cfg;
    cfg.cutoff = 4;
    auto m = NicholsModel::build(sp, cfg);
    for (uint32_t n = 1; n <= std::min<uint32_t>(4, m->cutoff()); ++n) {
      for (Idx j = 0; j < m->dim(n); ++j) {
        ModelElt e{n, SparseVec::unit(j, Fq::one(sp->field()))};
        bool allZero = true;
        for (Letter k = 0; k < sp->dim(); ++k)
          if (!m->derive(k, e).isZero()) allZero = false;
        if (allZero) ++bad;
        ++cases;
      }
    }
  }
  detail = std::to_string(cases) + " basis vectors, " + std::to_string(bad) + " failures";
  return bad == 0;
}

bool propFactorization(std::string& detail) {
  std::mt19937 rng(239);
  int bad = 0;
  for (int t = 0; t < 200; ++t) {
    uint32_t rank = 2 + t % 2;
    auto sp = testing::randomRootOfUnityDiagonal(rng, rank, 2 + t % 5, 6);
    EngineConfig cfg;
    cfg.cutoff = 5;
    auto m = NicholsModel::build(sp, cfg);
    SplitSpec split;
    std::uniform_int_distribution<uint32_t> letterD(1, rank - 1);
    uint32_t nLeft = letterD(rng);
    for (uint32_t l = 1; l <= nLeft; ++l) split.left.push_back(l);
    auto fact = factorization_check(*m, split);
    if (!fact.bigradedPass || !fact.dimensionPass) ++bad;
  }
  detail = "200 random splits, " + std::to_string(bad) + " failures";
  return bad == 0;
}

}  // namespace

int main() {
  std::vector<Line> lines;
  auto run = [&](const std::string& name, const std::function<bool(std::string&)>& fn) {
    auto t0 = std::chrono::steady_clock::now();
    std::string detail;
    bool pass = false;
    try {
      pass = fn(detail);
    } catch (const std::exception& e) {
      detail = std::string("exception: ") + e.what();
    }
    double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    lines.push_back({name, pass, s, detail});
    std::cout << "criterion " << name << ": " << (pass ? "PASS" : "FAIL") << "  [" << detail
              << "]  (" << s << "s)" << std::endl;
  };

  run("1-z4-suite", [](std::string& d) { return suitePasses("gag", d); });
  run("2-rank2-generic-relations", [](std::string& d) {
    return suitePasses("rank2", d, [](const Report& r) {
      return r.name.find("generic") != std::string::npos;
    });
  });
  run("3-rank2-roots-of-unity", [](std::string& d) {
    return suitePasses("rank2", d, [](const Report& r) {
      return r.name.find("cyclotomic5") != std::string::npos;
    });
  });
  run("4-typeABCD-presentations", [](std::string& d) {
    bool a = suitePasses("typeA", d);
    d += " / ";
    bool b = suitePasses("typeBCD", d);
    return a && b;
  });
  run("5-block-and-point", [](std::string& d) { return suitePasses("blockpoint", d); });
  run("6-engine-oracle-equivalence", [](std::string& d) { return suitePasses("engine-oracle", d); });
  run("7-property-braid-equation", propBraidEquation);
  run("7-property-field-axioms", propFieldAxioms);
  run("7-property-pascal", propPascal);
  run("7-property-multiply", propMultiply);
  run("7-property-derivation-separation", propSeparation);
  run("7-property-bigraded-factorization", propFactorization);

  bool all = true;
  for (const auto& l : lines) all = all && l.pass;
  std::cout << (all ? "ACCEPTANCE PASS" : "ACCEPTANCE FAIL") << std::endl;
  return all ? 0 : 1;
}
