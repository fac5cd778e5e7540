// Command-line front end: build algebras, run abnormality certificates,
// genericity samplers and the rank-3 step-3 extremal verification.

#include <array>
#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "carnot/expr.hpp"
#include "carnot/f33.hpp"
#include "carnot/io.hpp"
#include "carnot/prolong.hpp"
#include "carnot/report.hpp"

namespace {

using namespace carnot;

constexpr int kExitOk = 0;
constexpr int kExitExpectFailed = 1;
constexpr int kExitInputError = 2;

struct Clock {
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  }
};

std::string join_argv(int argc, char** argv) {
  std::string s;
  for (int i = 0; i < argc; ++i) {
    if (i) s += " ";
    s += argv[i];
  }
  return s;
}

/// "f2,4" or "f{2,4}" -> free nilpotent algebra
AlgebraPtr parse_free_algebra(const std::string& spec, size_t cap) {
  std::string body = spec;
  if (body.size() >= 2 && body.front() == 'f') body = body.substr(1);
  std::erase(body, '{');
  std::erase(body, '}');
  const size_t comma = body.find(',');
  if (comma == std::string::npos)
    throw ParseError("algebra spec must look like f2,4 (got " + spec + ")");
  const int r = std::stoi(body.substr(0, comma));
  const int s = std::stoi(body.substr(comma + 1));
  return CarnotAlgebra::free_nilpotent(r, s, cap);
}

void emit(const RunReport& rep, bool as_json, const Clock& clock) {
  if (as_json)
    std::cout << rep.json(clock.seconds());
  else
    std::cout << rep.text(clock.seconds());
}

std::string layers_string(const CarnotAlgebra& alg) {
  std::string s;
  for (size_t i = 0; i < alg.layer_dims().size(); ++i) {
    if (i) s += "/";
    s += std::to_string(alg.layer_dims()[i]);
  }
  return s;
}

int run(int argc, char** argv) {
  CLI::App app{"carnot: exact computations on Carnot groups and their abnormal sets"};
  app.require_subcommand(1);
  bool as_json = false;
  app.add_flag("--json", as_json, "emit the report as JSON");

  Clock clock;
  const std::string command = join_argv(argc, argv);

  // ---- algebra ----
  auto* algebra = app.add_subcommand("algebra", "build or validate algebras");
  algebra->require_subcommand(1);

  auto* alg_free = algebra->add_subcommand("free", "build a free nilpotent algebra");
  int rank = 0, step = 0;
  size_t cap = CarnotAlgebra::kDefaultDimCap;
  bool dump = false;
  alg_free->add_option("--rank", rank, "number of generators")->required();
  alg_free->add_option("--step", step, "nilpotency step")->required();
  alg_free->add_option("--cap", cap, "dimension cap");
  alg_free->add_flag("--dump", dump, "print basis labels and the structure constants");
  alg_free->callback([&] {
    const AlgebraPtr alg = CarnotAlgebra::free_nilpotent(rank, step, cap);
    RunReport rep(command);
    rep.add("algebra", "f" + std::to_string(rank) + "," + std::to_string(step));
    rep.add("dim", static_cast<long>(alg->dim()));
    rep.add("layers", layers_string(*alg));
    if (dump) {
      std::string basis;
      for (int i = 0; i < alg->dim(); ++i) {
        if (i) basis += " ";
        basis += alg->label(i);
      }
      rep.add("basis", basis);
      rep.add("structure", dump_algebra(*alg));
    }
    emit(rep, as_json, clock);
  });

  auto* alg_load = algebra->add_subcommand("load", "validate an algebra spec file");
  std::string load_path;
  alg_load->add_option("--file", load_path, "algebra spec JSON")->required();
  alg_load->callback([&] {
    const AlgebraPtr alg = load_algebra_file(load_path);
    RunReport rep(command);
    rep.add("file", load_path);
    rep.add("valid", true);
    rep.add("dim", static_cast<long>(alg->dim()));
    rep.add("layers", layers_string(*alg));
    emit(rep, as_json, clock);
  });

  // ---- criterion ----
  auto* criterion = app.add_subcommand("criterion", "Sard criteria on the gl(V1) prolongation");
  criterion->require_subcommand(1);

  auto* crit_check = criterion->add_subcommand("check", "infinitesimal criterion for one xi");
  std::string crit_algebra, xi_expr, expect;
  crit_check->add_option("--algebra", crit_algebra, "free algebra, e.g. f2,4")->required();
  crit_check->add_option("--xi", xi_expr, "Lie element, e.g. \"X2+X212+X2111\"")->required();
  crit_check->add_option("--expect", expect, "true|false: exit 1 on mismatch");
  crit_check->callback([&] {
    const AlgebraPtr alg = parse_free_algebra(crit_algebra, CarnotAlgebra::kDefaultDimCap);
    const Prolongation P(alg);
    const LieElement xi = parse_lie_element(alg, xi_expr);
    const CriterionResult res = criterion_infinitesimal(P, P.embed_base(xi.c));
    RunReport rep(command);
    rep.add("algebra", crit_algebra);
    rep.add("xi", xi_expr);
    rep.add("rank", static_cast<long>(res.rank));
    rep.add("dim", static_cast<long>(res.dim));
    rep.add("verdict", res.holds);
    emit(rep, as_json, clock);
    if (!expect.empty() && expect != (res.holds ? "true" : "false"))
      throw CLI::RuntimeError(kExitExpectFailed);
  });

  auto* crit_sample = criterion->add_subcommand("sample", "seeded genericity sampler");
  int trials = 100;
  uint64_t seed = 0;
  crit_sample->add_option("--algebra", crit_algebra, "free algebra, e.g. f2,5")->required();
  crit_sample->add_option("--trials", trials, "number of random xi draws")->required();
  crit_sample->add_option("--seed", seed, "RNG seed")->required();
  crit_sample->callback([&] {
    const AlgebraPtr alg = parse_free_algebra(crit_algebra, CarnotAlgebra::kDefaultDimCap);
    const Prolongation P(alg);
    const SamplerReport sr = generic_sampler(P, trials, seed);
    RunReport rep(command);
    rep.add("algebra", crit_algebra);
    rep.add("xi", "random integer box [-9,9], per-trial seeds (seed, trial)");
    rep.add("rank", static_cast<long>(sr.max_rank));
    rep.add("dim", static_cast<long>(sr.dim));
    rep.add("verdict", sr.successes > 0);
    rep.add("seed", static_cast<long>(sr.seed));
    rep.add("trials", static_cast<long>(sr.trials));
    rep.add("successes", static_cast<long>(sr.successes));
    emit(rep, as_json, clock);
  });

  // ---- abnormal ----
  auto* abnormal = app.add_subcommand("abnormal", "abnormality certificates");
  abnormal->require_subcommand(1);

  auto* abn_control = abnormal->add_subcommand("control", "certificate for a control file");
  std::string control_path, csv_path;
  abn_control->add_option("--file", control_path, "control JSON")->required();
  abn_control->add_option("--csv", csv_path, "write the breakpoint trajectory as CSV");
  abn_control->add_option("--expect", expect, "abnormal|not-abnormal: exit 1 on mismatch");
  abn_control->callback([&] {
    const PiecewiseControl u = load_control_file(control_path);
    const AbnormalityCertificate cert = is_abnormal(u);
    RunReport rep(command);
    rep.add("file", control_path);
    rep.add("segments", static_cast<long>(u.segments()));
    rep.add("image_rank", static_cast<long>(cert.image_rank));
    rep.add("dim", static_cast<long>(u.algebra()->dim()));
    rep.add("abnormal", cert.abnormal);
    rep.add("annihilators", static_cast<long>(cert.annihilators.size()));
    for (size_t i = 0; i < cert.annihilators.size(); ++i) {
      std::string line;
      for (int k = 0; k < u.algebra()->dim(); ++k) {
        const Rat& q = cert.annihilators[i].c[k];
        if (q == 0) continue;
        if (!line.empty()) line += " + ";
        line += rat_str(q) + "*" + u.algebra()->label(k) + "*";
      }
      rep.add("annihilator_" + std::to_string(i + 1), line.empty() ? "0" : line);
    }
    if (!csv_path.empty()) {
      std::ofstream out(csv_path);
      std::vector<double> times;
      std::vector<Vecd> pts;
      for (const auto& g : breakpoint_trajectory(u)) {
        Vecd v(g.alg->dim());
        for (int i = 0; i < g.alg->dim(); ++i) v[i] = to_double(g.log[i]);
        pts.push_back(std::move(v));
      }
      for (const auto& b : u.breakpoints()) times.push_back(to_double(b));
      write_trajectory_csv(out, times, pts);
      rep.add("csv", csv_path);
    }
    emit(rep, as_json, clock);
    if (!expect.empty() && expect != (cert.abnormal ? "abnormal" : "not-abnormal"))
      throw CLI::RuntimeError(kExitExpectFailed);
  });

  auto* abn_step2 = abnormal->add_subcommand("step2", "rank/Pfaffian tests in V + Lambda^2 V");
  int s2_rank = 0;
  std::string point_expr;
  abn_step2->add_option("--rank", s2_rank, "rank of the free step-2 group")->required();
  abn_step2->add_option("--point", point_expr, "point \"v;xi\", e.g. \"0;e1^e2\"")->required();
  abn_step2->add_option("--expect", expect, "abnormal|not-abnormal: exit 1 on mismatch");
  abn_step2->callback([&] {
    const Step2Point p = parse_step2_point(s2_rank, point_expr);
    const bool abn = is_abnormal_point(p);
    const bool pf = pfaffian_membership(p);
    RunReport rep(command);
    rep.add("rank", static_cast<long>(s2_rank));
    rep.add("point", point_expr);
    rep.add("rank_v_xi", static_cast<long>(rank2(p)));
    rep.add("abnormal", abn);
    rep.add("pfaffian_membership", pf);
    if (s2_rank % 2 == 0) rep.add("stratum", stratum_name(stratum(p)));
    if (abn) {
      const auto W = subgroup_descent(p);
      rep.add("descent_dim", static_cast<long>(W.size()));
    }
    emit(rep, as_json, clock);
    if (!expect.empty() && expect != (abn ? "abnormal" : "not-abnormal"))
      throw CLI::RuntimeError(kExitExpectFailed);
  });

  auto* abn_f33 = abnormal->add_subcommand("f33", "exponential-control extremal verification");
  std::string a_str = "1", b_str = "2", amp_str = "1,1,1";
  int segments = 2000;
  double tol = 1e-6;
  abn_f33->add_option("--a", a_str, "rate a (rational)");
  abn_f33->add_option("--b", b_str, "rate b (rational)");
  abn_f33->add_option("--amplitudes", amp_str, "three rational amplitudes");
  abn_f33->add_option("--segments", segments, "piecewise-constant segment count");
  abn_f33->add_option("--tol", tol, "residual tolerance for the pass verdict");
  abn_f33->add_option("--csv", csv_path, "write the trajectory as CSV");
  abn_f33->add_option("--expect", expect, "pass|fail: exit 1 on mismatch");
  abn_f33->callback([&] {
    const AlgebraPtr f33 = CarnotAlgebra::free_nilpotent(3, 3);
    const Rat a = rat_parse(a_str), b = rat_parse(b_str);
    std::array<Rat, 3> amps;
    {
      std::string s = amp_str;
      for (auto& c : s)
        if (c == ',') c = ' ';
      std::istringstream ss(s);
      std::string tok;
      for (int i = 0; i < 3; ++i) {
        if (!(ss >> tok)) throw ParseError("amplitudes want three rationals");
        amps[i] = rat_parse(tok);
      }
    }
    const AbcReport r = verify_abnormal_abc(f33, a, b, amps, segments);
    const bool pass = r.extremal_poly_residual <= tol && r.adjoint_residual <= 1e-8;
    RunReport rep(command);
    rep.add("a", rat_str(a));
    rep.add("b", rat_str(b));
    rep.add("c", rat_str(-a - b));
    rep.add("amplitudes", amp_str);
    rep.add("segments", static_cast<long>(segments));
    rep.add("extremal_poly_residual", r.extremal_poly_residual);
    rep.add("adjoint_residual", r.adjoint_residual);
    rep.add("not_in_subgroup", r.not_in_proper_subgroup);
    rep.add("pass", pass);
    if (!csv_path.empty()) {
      std::ofstream out(csv_path);
      write_trajectory_csv(out, r.times, r.trajectory);
      rep.add("csv", csv_path);
    }
    emit(rep, as_json, clock);
    if (!expect.empty() && expect != (pass ? "pass" : "fail"))
      throw CLI::RuntimeError(kExitExpectFailed);
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInputError;
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const CLI::RuntimeError& e) {
    return e.get_exit_code();
  } catch (const ValidationError& e) {
    std::cerr << ValidationError::name(e.kind) << " on triple (" << e.i << "," << e.j << ","
              << e.k << "): " << e.what() << "\n";
    return kExitInputError;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInputError;
  }
}
