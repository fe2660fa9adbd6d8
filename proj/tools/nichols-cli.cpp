#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "nichols/cache.hpp"
#include "nichols/sha256.hpp"
#include "nichols/paperdata.hpp"
#include "nichols/specio.hpp"
#include "nichols/suites.hpp"

using namespace nichols;
using json = nlohmann::ordered_json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 1;
constexpr int kExitInconclusive = 2;
constexpr int kExitUnsupported = 3;
constexpr int kExitCheckFailed = 4;

struct CommonOpts {
  uint32_t cutoff = 10;
  std::string engine = "auto";
  std::string out;
  std::string cacheDir;
  bool noCache = false;
  std::string corpusDir;
};

EnginePath resolveEngine(const std::string& engine, const BraidedSpace& sp) {
  if (engine == "derivation") {
    if (!sp.realized()) throw EngineError("derivation engine requires a realizable space");
    return EnginePath::Derivation;
  }
  if (engine == "symmetrizer") return EnginePath::Symmetrizer;
  return sp.realized() ? EnginePath::Derivation : EnginePath::Symmetrizer;
}

std::shared_ptr<NicholsModel> buildWithCache(const ParsedSpec& spec, uint32_t cutoff,
                                             EnginePath path, const CommonOpts& opts,
                                             bool& cacheHit) {
  cacheHit = false;
  EngineConfig cfg;
  cfg.cutoff = cutoff;
  cfg.path = path;
  cfg.symmetrizerCutoff = std::max<uint32_t>(8, cutoff);
  if (opts.noCache) return NicholsModel::build(spec.space, cfg);
  ModelCache cache(opts.cacheDir);
  std::string digest = ModelCache::keyDigest(spec.canonical, cutoff, path);
  if (auto m = cache.get(digest, spec.space)) {
    cacheHit = true;
    return m;
  }
  auto m = NicholsModel::build(spec.space, cfg);
  cache.put(digest, *m);
  return m;
}

void emit(const Report& r, const std::string& outPath) {
  json j = r.fullJson();
  if (!outPath.empty()) {
    std::ofstream out(outPath, std::ios::trunc);
    out << j.dump(2) << "\n";
  }
  std::cout << r.table();
  std::cout << "report digest: " << r.digest() << "\n";
}

void fillModelReport(Report& r, const NicholsModel& m, const ParsedSpec& spec, bool bigraded) {
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
  r.inputDigest = sha256Hex(spec.canonical);
  if (bigraded) {
    json bg = json::array();
    for (const auto& [grade, dim] : m.bihilbert()) {
      json e;
      e["deg"] = grade;
      e["dim"] = dim;
      bg.push_back(std::move(e));
    }
    r.bigraded = bg;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact-arithmetic engine for degreewise Nichols-algebra computation"};
  app.require_subcommand(1);

  CommonOpts opts;
  bool bigraded = false;
  bool requireFinite = false;
  std::string specPath, presentationPath, leftSpec, suiteName = "all", outDir;
  std::vector<std::string> paramKVs, scalarKVs;
  unsigned jobs = 0;

  auto addCommon = [&](CLI::App* cmd) {
    cmd->add_option("spec", specPath, "braiding spec JSON file")->required();
    cmd->add_option("--cutoff", opts.cutoff, "maximum computed degree");
    cmd->add_option("--engine", opts.engine, "auto|derivation|symmetrizer")
        ->check(CLI::IsMember({"auto", "derivation", "symmetrizer"}));
    cmd->add_option("--out", opts.out, "write the JSON report here");
    cmd->add_option("--cache-dir", opts.cacheDir, "model cache directory");
    cmd->add_flag("--no-cache", opts.noCache, "bypass the model cache");
  };

  auto* analyze = app.add_subcommand("analyze", "build a model, report Hilbert data and finiteness");
  addCommon(analyze);
  analyze->add_flag("--bigraded", bigraded, "include the multidegree Hilbert table");
  analyze->add_flag("--require-finite", requireFinite,
                    "exit with status 2 when finiteness is unknown at the cutoff");

  auto* split = app.add_subcommand("split", "coinvariant analysis of a decomposition W = V + U");
  addCommon(split);
  split->add_option("--left", leftSpec, "comma-separated 1-based letters of V")->required();

  auto* verify = app.add_subcommand("verify", "verify a presentation file against a model");
  addCommon(verify);
  verify->add_option("--presentation", presentationPath, "presentation JSON file")->required();
  verify->add_option("--param", paramKVs, "integer parameter, e.g. --param theta=3");
  verify->add_option("--scalar", scalarKVs, "scalar parameter, e.g. --scalar q12=q");

  auto* suite = app.add_subcommand("suite", "run a named verification suite");
  suite->add_option("--name", suiteName, "gag|rank2|typeA|typeBCD|blockpoint|engine-oracle|all");
  suite->add_option("--out", outDir, "directory for per-case reports and the summary");
  suite->add_option("--jobs", jobs, "worker pool size");
  suite->add_option("--corpus", opts.corpusDir, "corpus directory override");

  auto* cacheCmd = app.add_subcommand("cache", "manage the model cache");
  std::string cacheAction;
  cacheCmd->add_option("action", cacheAction, "list|clear|gc")->required();
  cacheCmd->add_option("--cache-dir", opts.cacheDir, "model cache directory");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*analyze) {
      auto spec = parseBraidingSpecFile(specPath);
      EnginePath path;
      try {
        path = resolveEngine(opts.engine, *spec.space);
      } catch (const EngineError& e) {
        std::cerr << "unsupported: " << e.what() << "\n";
        return kExitUnsupported;
      }
      bool hit = false;
      auto t0 = std::chrono::steady_clock::now();
      auto m = buildWithCache(spec, opts.cutoff, path, opts, hit);
      Report r;
      r.name = "analyze";
      fillModelReport(r, *m, spec, bigraded);
      r.cacheHit = hit;
      r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      emit(r, opts.out);
      if (requireFinite && !m->finiteness().finite) return kExitInconclusive;
      return kExitOk;
    }

    if (*split) {
      auto spec = parseBraidingSpecFile(specPath);
      EnginePath path;
      try {
        path = resolveEngine(opts.engine, *spec.space);
        if (path != EnginePath::Derivation)
          throw EngineError("split analysis needs the derivation engine");
      } catch (const EngineError& e) {
        std::cerr << "unsupported: " << e.what() << "\n";
        return kExitUnsupported;
      }
      SplitSpec sp;
      {
        std::stringstream ss(leftSpec);
        std::string tok;
        while (std::getline(ss, tok, ',')) sp.left.push_back(std::stoul(tok));
        sp.validate(spec.space->dim());
      }
      bool hit = false;
      auto t0 = std::chrono::steady_clock::now();
      auto m = buildWithCache(spec, opts.cutoff, path, opts, hit);
      Report r;
      r.name = "split";
      fillModelReport(r, *m, spec, true);
      r.cacheHit = hit;
      auto zu = zu_basis(*m, sp);
      json zj;
      zj["layers"] = zu.layerDims();
      zj["total"] = zu.totalDim();
      zj["stopped"] = zu.stopped;
      auto kd = coinvariant_hilbert(*m, sp, m->cutoff());
      zj["coinvariantHilbert"] = kd;
      r.extra = zj;
      auto fact = factorization_check(*m, sp);
      r.checks.push_back({"factorization-bigraded", "dim B(W) = dim B(Z_U) dim B(V)",
                          fact.bigradedPass, fact.detail});

      if (fact.dimW)
        r.checks.push_back({"factorization-dimensions",
                            "dim B(W) = dim K * dim B(V)", fact.dimensionPass,
                            "W " + std::to_string(*fact.dimW) + " K " + std::to_string(*fact.dimK) +
                                " V " + std::to_string(*fact.dimBV)});
      auto gen = verify_K_is_generated_by_ZU(*m, sp, std::min<uint32_t>(m->cutoff(), 6));
      r.checks.push_back({"K-generated-by-ZU", "K = B(Z_U)", gen.pass(), ""});
      r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      emit(r, opts.out);
      return r.pass() ? kExitOk : kExitCheckFailed;
    }

    if (*verify) {
      auto spec = parseBraidingSpecFile(specPath);
      EnginePath path;
      try {
        path = resolveEngine(opts.engine, *spec.space);
      } catch (const EngineError& e) {
        std::cerr << "unsupported: " << e.what() << "\n";
        return kExitUnsupported;
      }
      bool hit = false;
      auto t0 = std::chrono::steady_clock::now();
      auto m = buildWithCache(spec, opts.cutoff, path, opts, hit);
      PresentationParams params;
      for (const auto& kv : paramKVs) {
        auto eq = kv.find('=');
        if (eq == std::string::npos) throw SpecError("malformed --param " + kv);
        params.ints[kv.substr(0, eq)] = std::stol(kv.substr(eq + 1));
      }
      for (const auto& kv : scalarKVs) {
        auto eq = kv.find('=');
        if (eq == std::string::npos) throw SpecError("malformed --scalar " + kv);
        params.scalars[kv.substr(0, eq)] =
            parse_scalar(kv.substr(eq + 1), spec.space->field());
      }
      namespace fs = std::filesystem;
      fs::path p(presentationPath);
      std::string family = p.stem().string();
      std::string dir = p.has_parent_path() ? p.parent_path().string() : ".";
      auto pres = presentation(*m, family, params, dir);
      auto rep = verify_presentation(*m, pres, opts.cutoff);
      Report r;
      r.name = "verify/" + family;
      fillModelReport(r, *m, spec, false);
      r.cacheHit = hit;
      for (const auto& rr : rep.relations)
        r.checks.push_back({"R/" + rr.label, pres.anchor, rr.pass, ""});
      for (const auto& d : rep.perDegree)
        r.checks.push_back({"IS/degree-" + std::to_string(d.degree), "", d.pass,
                            "rank " + std::to_string(d.lhs) + " dim " + std::to_string(d.rhs)});
      r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      emit(r, opts.out);
      return r.pass() ? kExitOk : kExitCheckFailed;
    }

    if (*suite) {
      auto reports = runSuite(suiteName, opts.corpusDir, jobs);
      bool all = true;
      json summary = json::array();
      for (const auto& r : reports) {
        all = all && r.pass();
        std::cout << r.table() << "\n";
        json s;
        s["name"] = r.name;
        s["pass"] = r.pass();
        s["seconds"] = r.seconds;
        summary.push_back(std::move(s));
        if (!outDir.empty()) {
          std::filesystem::create_directories(outDir);
          std::string fname = r.name;
          for (auto& ch : fname)
            if (ch == '/') ch = '_';
          std::ofstream out(std::filesystem::path(outDir) / (fname + ".json"), std::ios::trunc);
          out << r.fullJson().dump(2) << "\n";
        }
      }
      if (!outDir.empty()) {
        std::ofstream out(std::filesystem::path(outDir) / "summary.json", std::ios::trunc);
        out << summary.dump(2) << "\n";
      }
      std::cout << (all ? "SUITE PASS" : "SUITE FAIL") << " (" << reports.size() << " cases)\n";
      return all ? kExitOk : kExitCheckFailed;
    }

    if (*cacheCmd) {
      ModelCache cache(opts.cacheDir);
      if (cacheAction == "list") {
        for (const auto& e : cache.list())
          std::cout << e.digest << "  " << e.bytes << " bytes  "
                    << (e.valid ? "valid" : "invalid") << "\n";
      } else if (cacheAction == "clear") {
        cache.clear();
        std::cout << "cache cleared\n";
      } else if (cacheAction == "gc") {
        std::cout << cache.gc() << " entries removed\n";
      } else {
        std::cerr << "unknown cache action " << cacheAction << "\n";
        return kExitInput;
      }
      return kExitOk;
    }
  } catch (const ParseError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitInput;
  } catch (const SpecError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitInput;
  } catch (const PaperDataError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitInput;
  } catch (const EngineError& e) {
    std::cerr << "unsupported: " << e.what() << "\n";
    return kExitUnsupported;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  }
  return kExitOk;
}
