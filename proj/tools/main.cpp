// Command line front end: generate / solve / bench / certify.
//
// Exit codes: 0 success (for solve: certified), 1 solver-level failure,
// 2 usage or I/O error.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "mpcc/baseline.hpp"
#include "mpcc/generators.hpp"
#include "mpcc/homotopy.hpp"
#include "mpcc/problem_io.hpp"
#include "mpcc/rng.hpp"

namespace {

using nlohmann::ordered_json;

constexpr const char* kCsvHeader =
    "problem,seed,status,objective,cc_violation_inf,cc_violation_2,residual,"
    "outer_iters,inner_iters_total,time_ms,label";

std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

struct ReportRow {
  std::string problem;
  std::uint64_t seed = 0;
  std::string status;
  double objective = 0.0;
  double cc_violation_inf = 0.0;
  double cc_violation_2 = 0.0;
  double residual = 0.0;
  long outer_iters = 0;
  long inner_iters_total = 0;
  double time_ms = 0.0;
  std::string label = "None";

  std::string render() const {
    std::ostringstream out;
    out << problem << ',' << seed << ',' << status << ',' << num(objective)
        << ',' << num(cc_violation_inf) << ',' << num(cc_violation_2) << ','
        << num(residual) << ',' << outer_iters << ',' << inner_iters_total
        << ',' << num(time_ms) << ',' << label;
    return out.str();
  }
};

std::string problem_label(const mpcc::QuadraticMpcc& q,
                          const std::string& path) {
  if (!q.name.empty()) return q.name;
  const auto slash = path.find_last_of('/');
  std::string stem = slash == std::string::npos ? path : path.substr(slash + 1);
  const auto dot = stem.find_last_of('.');
  if (dot != std::string::npos) stem = stem.substr(0, dot);
  return stem.empty() ? "problem" : stem;
}

std::vector<double> starting_point(const std::string& spec,
                                   const mpcc::QuadraticMpcc& q,
                                   std::uint64_t* seed_out) {
  const std::size_t n = q.dim();
  if (spec == "zeros") return std::vector<double>(n, 0.0);
  if (spec == "lower") {
    // box lower bounds where finite, zero elsewhere
    std::vector<double> x(n, 0.0);
    for (std::size_t j = 0; j < q.n0 && j < q.l0.size(); ++j) x[j] = q.l0[j];
    return x;
  }
  if (spec.rfind("random:", 0) == 0) {
    const std::uint64_t seed = std::stoull(spec.substr(7));
    if (seed_out) *seed_out = seed;
    mpcc::Rng rng(seed);
    std::vector<double> x(n);
    for (double& t : x) t = rng.uniform(-50.0, 50.0);
    return x;
  }
  throw CLI::ValidationError("--x0 must be zeros, lower, or random:<seed>");
}

ordered_json certificate_json(const mpcc::StationarityCertificate& cert) {
  ordered_json doc;
  doc["residual"] = cert.residual;
  doc["cc_violation"] = cert.cc_violation;
  doc["label"] = mpcc::to_string(cert.label);
  ordered_json list = ordered_json::array();
  for (const auto& v : cert.per_constraint) {
    ordered_json item;
    item["y"] = {v.multiplier.z1, v.multiplier.z2};
    item["z"] = {v.projected.z1, v.projected.z2};
    item["cone"] = mpcc::to_string(v.cone);
    item["member"] = v.member;
    list.push_back(std::move(item));
  }
  doc["constraints"] = std::move(list);
  return doc;
}

void write_trace(const std::string& path, const mpcc::SolveReport& rep,
                 const mpcc::HomotopyParams& params) {
  ordered_json doc;
  doc["epsilon"] = params.epsilon;
  doc["beta"] = params.beta;
  doc["rho"] = params.rho;
  doc["lambda0"] = params.lambda0;
  doc["status"] = mpcc::to_string(rep.status);
  doc["stage1_mode"] = mpcc::to_string(rep.stage1_mode);
  doc["label"] = mpcc::to_string(rep.certificate.label);
  doc["lambda_final"] = rep.lambda_final;
  doc["objective"] = rep.objective;
  doc["x_final"] = rep.x_final;
  ordered_json rows = ordered_json::array();
  for (const auto& r : rep.trace) {
    ordered_json row;
    row["nu"] = r.outer;
    row["lambda"] = r.lambda;
    row["s_value"] = r.s_value;
    row["inner_residual"] = r.inner_residual;
    row["envelope_residual"] = r.envelope_residual;
    row["cc_violation"] = r.cc_violation;
    row["inner_iters"] = r.inner_iters;
    row["x"] = r.x;
    rows.push_back(std::move(row));
  }
  doc["outer"] = std::move(rows);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw mpcc::SchemaError("cannot write trace file: " + path);
  out << doc.dump() << "\n";
}

ReportRow solve_row(const mpcc::QuadraticMpcc& q, const std::string& name,
                    std::uint64_t seed, const mpcc::HomotopyParams& params,
                    std::span<const double> x0, bool skip_stage1,
                    mpcc::SolveReport* report_out = nullptr) {
  const mpcc::MpccProblem prob = mpcc::quadratic_to_mpcc(q);
  const auto t0 = std::chrono::steady_clock::now();
  mpcc::SolveReport rep = mpcc::solve(prob, params, x0, skip_stage1);
  const double ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
          .count();
  ReportRow row;
  row.problem = name;
  row.seed = seed;
  row.status = mpcc::to_string(rep.status);
  row.objective = rep.objective;
  row.cc_violation_inf = mpcc::cc_violation(prob, rep.x_final, mpcc::Norm::Inf);
  row.cc_violation_2 = mpcc::cc_violation(prob, rep.x_final, mpcc::Norm::Two);
  row.residual = rep.certificate.residual;
  row.outer_iters = static_cast<long>(rep.trace.size());
  row.inner_iters_total = rep.inner_iters_total;
  row.time_ms = ms;
  row.label = mpcc::to_string(rep.certificate.label);
  if (report_out) *report_out = std::move(rep);
  return row;
}

// kth3 report rows use the reference-instance objective, which carries
// the constant the quadratic form drops
ReportRow kth3_row(std::uint64_t run, double eps) {
  const mpcc::MpccProblem prob = mpcc::kth3();
  mpcc::HomotopyParams params;
  params.epsilon = eps;
  mpcc::Rng rng(run);
  const std::vector<double> x0{rng.uniform(-50.0, 50.0),
                               rng.uniform(-50.0, 50.0)};
  const auto t0 = std::chrono::steady_clock::now();
  const mpcc::SolveReport rep = mpcc::solve(prob, params, x0);
  const double ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
          .count();
  ReportRow row;
  row.problem = "kth3";
  row.seed = run;
  row.status = mpcc::to_string(rep.status);
  row.objective = rep.objective;
  row.cc_violation_inf = mpcc::cc_violation(prob, rep.x_final, mpcc::Norm::Inf);
  row.cc_violation_2 = mpcc::cc_violation(prob, rep.x_final, mpcc::Norm::Two);
  row.residual = rep.certificate.residual;
  row.outer_iters = static_cast<long>(rep.trace.size());
  row.inner_iters_total = rep.inner_iters_total;
  row.time_ms = ms;
  row.label = mpcc::to_string(rep.certificate.label);
  return row;
}

ReportRow pgm_row(const mpcc::QuadraticMpcc& q, const std::string& name,
                  std::uint64_t seed, double eps, std::vector<double> x0) {
  const auto t0 = std::chrono::steady_clock::now();
  mpcc::PgmOptions opts;
  opts.epsilon = eps;
  const mpcc::InnerResult res = mpcc::pgm_solve(q, std::move(x0), opts);
  const double ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
          .count();
  const mpcc::MpccProblem prob = mpcc::quadratic_to_mpcc(q);
  ReportRow row;
  row.problem = name + "/pgm";
  row.seed = seed;
  row.status = mpcc::to_string(res.status);
  row.objective = res.value;
  row.cc_violation_inf = mpcc::cc_violation(prob, res.x, mpcc::Norm::Inf);
  row.cc_violation_2 = mpcc::cc_violation(prob, res.x, mpcc::Norm::Two);
  row.residual = res.residual;
  row.outer_iters = 0;
  row.inner_iters_total = res.iters;
  row.time_ms = ms;
  row.label = "None";
  return row;
}

int cmd_generate(const std::string& out_path, std::size_t n0, std::size_t p,
                 std::uint64_t seed) {
  const mpcc::QuadraticMpcc q = mpcc::gen_bound_qpcc({n0, p, seed});
  mpcc::save_problem(out_path, q);
  return 0;
}

struct SolveArgs {
  std::string problem_path;
  double eps = 1e-8;
  double beta = 0.999;
  double rho = 0.8;
  double lambda0 = 1.0;
  int max_outer = 200;
  std::string x0 = "zeros";
  bool skip_stage1 = false;
  std::string trace_path;
};

int cmd_solve(const SolveArgs& args) {
  const mpcc::QuadraticMpcc q = mpcc::load_problem(args.problem_path);
  mpcc::HomotopyParams params;
  params.epsilon = args.eps;
  params.beta = args.beta;
  params.rho = args.rho;
  params.lambda0 = args.lambda0;
  params.max_outer = args.max_outer;

  std::uint64_t seed = q.seed.value_or(0);
  const std::vector<double> x0 = starting_point(args.x0, q, &seed);

  mpcc::SolveReport rep;
  const ReportRow row =
      solve_row(q, problem_label(q, args.problem_path), seed, params, x0,
                args.skip_stage1, &rep);
  if (!args.trace_path.empty()) write_trace(args.trace_path, rep, params);
  std::cout << row.render() << "\n";
  return rep.status == mpcc::SolveStatus::CertifiedStationary ? 0 : 1;
}

struct BenchArgs {
  std::string suite = "kth3";
  std::string sizes = "10:20";
  int seeds = 5;
  int runs = 0;  // 0: suite default (kth3 20, bound-qpcc 1)
  std::string out_path;
  int jobs = 1;
  double eps = 1e-6;
};

std::vector<std::pair<std::size_t, std::size_t>> parse_sizes(
    const std::string& text) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  std::stringstream stream(text);
  std::string item;
  while (std::getline(stream, item, ',')) {
    const auto colon = item.find(':');
    if (colon == std::string::npos)
      throw CLI::ValidationError("--sizes entries must look like n0:p");
    out.emplace_back(std::stoull(item.substr(0, colon)),
                     std::stoull(item.substr(colon + 1)));
  }
  if (out.empty()) throw CLI::ValidationError("--sizes is empty");
  return out;
}

int cmd_bench(const BenchArgs& args) {
  std::vector<std::function<ReportRow()>> jobs;

  if (args.suite == "kth3") {
    const int runs = args.runs > 0 ? args.runs : 20;
    for (int run = 0; run < runs; ++run)
      jobs.emplace_back([run, eps = args.eps] {
        return kth3_row(static_cast<std::uint64_t>(run), eps);
      });
  } else if (args.suite == "bound-qpcc") {
    const auto sizes = parse_sizes(args.sizes);
    const int runs = args.runs > 0 ? args.runs : 1;
    for (const auto& [n0, p] : sizes) {
      for (int seed = 0; seed < args.seeds; ++seed) {
        const mpcc::QuadraticMpcc q =
            mpcc::gen_bound_qpcc({n0, p, static_cast<std::uint64_t>(seed)});
        for (int run = 0; run < runs; ++run) {
          // starting points uniform in [-50, 50], deterministic per job
          mpcc::Rng rng(static_cast<std::uint64_t>(seed) * 1000003 + run);
          std::vector<double> x0(q.dim());
          for (double& t : x0) t = rng.uniform(-50.0, 50.0);
          const std::string name = q.name;
          jobs.emplace_back([q, name, seed, x0, eps = args.eps] {
            mpcc::HomotopyParams params;
            params.epsilon = eps;
            return solve_row(q, name, static_cast<std::uint64_t>(seed), params,
                             x0, false);
          });
          jobs.emplace_back([q, name, seed, x0, eps = args.eps] {
            return pgm_row(q, name, static_cast<std::uint64_t>(seed), eps, x0);
          });
        }
      }
    }
  } else {
    throw CLI::ValidationError("--suite must be kth3 or bound-qpcc");
  }

  std::vector<ReportRow> rows(jobs.size());
  std::atomic<std::size_t> next{0};
  const int workers = std::max(1, args.jobs);
  std::vector<std::thread> pool;
  for (int w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (;;) {
        const std::size_t i = next.fetch_add(1);
        if (i >= rows.size()) return;
        rows[i] = jobs[i]();
      }
    });
  for (auto& t : pool) t.join();

  std::ostream* out = &std::cout;
  std::ofstream file;
  if (!args.out_path.empty()) {
    file.open(args.out_path, std::ios::binary);
    if (!file) throw mpcc::SchemaError("cannot write report: " + args.out_path);
    out = &file;
  }
  *out << kCsvHeader << "\n";
  for (const auto& row : rows) *out << row.render() << "\n";
  return 0;
}

struct CertifyArgs {
  std::string problem_path;
  std::string point;
  double lambda = 1.0;
  double beta = 0.999;
  double eps = 1e-8;
};

int cmd_certify(const CertifyArgs& args) {
  const mpcc::QuadraticMpcc q = mpcc::load_problem(args.problem_path);
  ordered_json parsed;
  try {
    parsed = ordered_json::parse(args.point);
  } catch (const std::exception& e) {
    throw mpcc::SchemaError(std::string("--point is not a JSON array: ") +
                            e.what());
  }
  if (!parsed.is_array() || parsed.size() != q.dim())
    throw mpcc::SchemaError("--point has the wrong dimension");
  std::vector<double> x;
  for (const auto& t : parsed) x.push_back(t.get<double>());

  const mpcc::MpccProblem prob = mpcc::quadratic_to_mpcc(q);
  const mpcc::StationarityCertificate cert =
      mpcc::certify(prob, x, args.lambda, args.beta, args.eps);
  std::cout << certificate_json(cert).dump() << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Homotopy solver for mathematical programs with "
               "complementarity constraints"};
  app.require_subcommand(1);

  auto* gen = app.add_subcommand(
      "generate", "Write a random bound-constrained quadratic MPCC instance");
  std::size_t gen_n0 = 10, gen_p = 20;
  std::uint64_t gen_seed = 0;
  std::string gen_out;
  gen->add_option("--n0", gen_n0, "box-constrained variables")->required();
  gen->add_option("--p", gen_p, "complementarity pairs")->required();
  gen->add_option("--seed", gen_seed, "generator seed")->required();
  gen->add_option("--out", gen_out, "output problem file")->required();

  auto* slv =
      app.add_subcommand("solve", "Run the homotopy solver on a problem file");
  SolveArgs sargs;
  slv->add_option("--problem", sargs.problem_path, "problem file")->required();
  slv->add_option("--eps", sargs.eps, "target accuracy");
  slv->add_option("--beta", sargs.beta, "envelope ratio in (0,1)");
  slv->add_option("--rho", sargs.rho, "lambda shrink factor in (0,1)");
  slv->add_option("--lambda0", sargs.lambda0, "initial lambda");
  slv->add_option("--max-outer", sargs.max_outer, "outer iteration cap");
  slv->add_option("--x0", sargs.x0, "start: zeros | lower | random:<seed>");
  slv->add_flag("--skip-stage1", sargs.skip_stage1,
                "start stage 2 directly from --x0");
  slv->add_option("--trace", sargs.trace_path, "write the outer trace JSON");

  auto* ben = app.add_subcommand("bench",
                                 "Run a benchmark suite and write a CSV report");
  BenchArgs bargs;
  ben->add_option("--suite", bargs.suite, "kth3 | bound-qpcc");
  ben->add_option("--sizes", bargs.sizes, "comma list of n0:p");
  ben->add_option("--seeds", bargs.seeds, "instance seeds 0..N-1");
  ben->add_option("--runs", bargs.runs, "runs per instance");
  ben->add_option("--out", bargs.out_path, "CSV output path (default stdout)");
  ben->add_option("--jobs", bargs.jobs, "worker threads");
  ben->add_option("--eps", bargs.eps, "target accuracy");

  auto* cer = app.add_subcommand(
      "certify", "Evaluate the stationarity certificate at a point");
  CertifyArgs cargs;
  cer->add_option("--problem", cargs.problem_path, "problem file")->required();
  cer->add_option("--point", cargs.point, "JSON array of coordinates")
      ->required();
  cer->add_option("--lambda", cargs.lambda, "smoothing lambda")->required();
  cer->add_option("--beta", cargs.beta, "envelope ratio");
  cer->add_option("--eps", cargs.eps, "accuracy for the label");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*gen) return cmd_generate(gen_out, gen_n0, gen_p, gen_seed);
    if (*slv) return cmd_solve(sargs);
    if (*ben) return cmd_bench(bargs);
    if (*cer) return cmd_certify(cargs);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
