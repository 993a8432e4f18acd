// Command-line front end: point generation, construction runs with optional
// exact verification, and parallel scaling sweeps. Exit codes: 0 ok,
// 1 construction or oracle failure, 2 usage error.

#include <chrono>
#include <cstdint>
#include <exception>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "sspd/generate.hpp"
#include "sspd/pairs.hpp"
#include "sspd/points.hpp"
#include "sspd/quadtree.hpp"
#include "sspd/report.hpp"
#include "sspd/separator.hpp"
#include "sspd/spanner.hpp"
#include "sspd/sspd.hpp"

namespace {

constexpr std::size_t kOracleGuard = 4096;   // coverage + separation oracles
constexpr std::size_t kStretchGuard = 2048;  // all-sources stretch oracle

const std::vector<std::string> kCommands = {"wspd",            "sspd-simple", "sspd-opt",
                                            "sspd-opt-reduced", "spanner",     "sep-spanner"};

struct PipelineParams {
  std::string cmd;
  double eps = 0.5;
  std::uint64_t seed = 1;
  bool verify = false;
};

struct PipelineOutcome {
  sspd::RunReport report;
  bool ok = true;
  // Artifact payloads for the caller to dump (run subcommand only).
  std::optional<sspd::PairDecomposition> pairs;
  std::optional<sspd::SpannerGraph> graph;
  std::optional<sspd::SeparatorCertificate> cert;
};

void append_note(sspd::RunReport& rep, const std::string& msg) {
  if (!rep.note.empty()) rep.note += "; ";
  rep.note += msg;
}

// Coverage + per-pair separation oracles; WSPDs additionally must cover every
// point pair exactly once.
void check_decomposition(PipelineOutcome& out, const sspd::PairDecomposition& dec,
                         const sspd::PointSet& pts) {
  sspd::CoverageReport cov = sspd::verify_coverage_all(dec, pts);
  bool once_required = dec.kind == sspd::DecompositionKind::wspd;
  bool cov_ok = once_required ? sspd::exactly_once(cov) : cov.ok;
  out.report.coverage_ok = cov_ok;
  if (!cov_ok) {
    out.ok = false;
    std::ostringstream msg;
    msg << "coverage failed: " << cov.missing_count << " missing";
    if (!cov.missing.empty())
      msg << ", first (" << cov.missing.front().first << "," << cov.missing.front().second << ")";
    if (once_required && cov.missing_count == 0) msg << ", multiplicity above one";
    append_note(out.report, msg.str());
  }

  sspd::SeparationMode mode = once_required ? sspd::SeparationMode::well : sspd::SeparationMode::semi;
  bool sep_ok = true;
  for (std::size_t i = 0; i < dec.pairs.size(); ++i) {
    const sspd::Pair& p = dec.pairs[i];
    if (!sspd::check_separation(p.left, p.right, pts, dec.separation, mode)) {
      sep_ok = false;
      std::ostringstream msg;
      msg << "separation failed at pair " << i << " (" << sspd::tag_name(p.tag) << ", |l|="
          << p.left.size() << ", |r|=" << p.right.size() << ")";
      append_note(out.report, msg.str());
      break;
    }
  }
  out.report.separation_ok = sep_ok;
  if (!sep_ok) out.ok = false;
}

void check_stretch(PipelineOutcome& out, const sspd::SpannerGraph& g, const sspd::PointSet& pts,
                   double eps) {
  sspd::StretchReport sr = sspd::stretch_factor(g, pts);
  out.report.stretch = sr.stretch;
  bool ok = sr.stretch <= 1.0 + eps;
  out.report.stretch_ok = ok;
  if (!ok) {
    out.ok = false;
    std::ostringstream msg;
    msg << "stretch " << sr.stretch << " > " << 1.0 + eps << " between " << sr.a << " and " << sr.b;
    append_note(out.report, msg.str());
  }
}

void fill_graph_stats(sspd::RunReport& rep, const sspd::SpannerGraph& g) {
  sspd::GraphStats gs = sspd::graph_stats(g);
  rep.edges = gs.edges;
  rep.max_degree = gs.max_degree;
  rep.total_weight = gs.total_weight;
}

PipelineOutcome run_pipeline(const sspd::PointSet& pts, const PipelineParams& prm) {
  using clock = std::chrono::steady_clock;
  PipelineOutcome out;
  sspd::RunReport& rep = out.report;
  rep.n = pts.size();
  rep.dim = pts.dim();
  rep.seed = prm.seed;
  rep.construction = prm.cmd;
  rep.eps = prm.eps;

  const sspd::IndexSet x = pts.all_indices();
  const bool oracles = prm.verify && pts.size() <= kOracleGuard;
  const auto t0 = clock::now();

  try {
    if (prm.cmd == "wspd" || prm.cmd == "sspd-simple" || prm.cmd == "sspd-opt" ||
        prm.cmd == "sspd-opt-reduced") {
      sspd::PairDecomposition dec;
      if (prm.cmd == "wspd") {
        sspd::GeneralWspd w(x, pts, prm.eps);
        dec = w.decomposition();
      } else if (prm.cmd == "sspd-simple") {
        dec = sspd_simple(x, pts, prm.eps, prm.seed);
      } else {
        sspd::SspdConfig cfg;
        cfg.eps = prm.eps;
        cfg.seed = prm.seed;
        cfg.reduce = prm.cmd == "sspd-opt-reduced";
        rep.rho = cfg.reduce ? prm.eps / 24.0 : prm.eps / 4.0;
        sspd::SspdResult res = cfg.reduce ? sspd::sspd_optimal_reduced(x, pts, cfg)
                                          : sspd::sspd_optimal(x, pts, cfg);
        if (res.diagnostics.gap_samples > 0) rep.mean_gap_proxy = res.diagnostics.mean_gap_proxy;
        dec = std::move(res.decomposition);
      }
      sspd::DecompositionStats st = sspd::decomposition_stats(dec, pts);
      rep.pair_count = st.pair_count;
      rep.weight = st.weight;
      rep.max_pairs_per_point = st.max_pairs_per_point;
      if (oracles) check_decomposition(out, dec, pts);
      out.pairs = std::move(dec);
    } else if (prm.cmd == "spanner") {
      sspd::SspdConfig cfg;
      cfg.eps = prm.eps / 16.0;
      cfg.seed = prm.seed;
      sspd::SspdResult inner = sspd::sspd_optimal_reduced(x, pts, cfg);
      sspd::SpannerResult sp = sspd::spanner_from_sspd(inner.decomposition, pts, prm.eps);
      rep.psi = sp.cones.psi;
      sspd::DecompositionStats st = sspd::decomposition_stats(inner.decomposition, pts);
      rep.pair_count = st.pair_count;
      rep.weight = st.weight;
      rep.max_pairs_per_point = st.max_pairs_per_point;
      fill_graph_stats(rep, sp.graph);
      if (oracles) {
        std::size_t bound = inner.decomposition.pairs.size() * sp.cones.count();
        if (sp.graph.edges.size() > bound) {
          out.ok = false;
          append_note(rep, "edge count exceeds pairs x cones bound");
        }
        if (pts.size() <= kStretchGuard) check_stretch(out, sp.graph, pts, prm.eps);
      }
      out.graph = std::move(sp.graph);
    } else if (prm.cmd == "sep-spanner") {
      sspd::SeparatorBuild sb = sspd::separator_spanner_build(x, pts, prm.eps, prm.seed);
      rep.t = sb.sspd.top.t;
      sspd::DecompositionStats st = sspd::decomposition_stats(sb.sspd.decomposition, pts);
      rep.pair_count = st.pair_count;
      rep.weight = st.weight;
      rep.max_pairs_per_point = st.max_pairs_per_point;
      fill_graph_stats(rep, sb.graph);
      rep.separator_size = sb.cert.separator.size();
      rep.side_a = sb.cert.side_a.size();
      rep.side_b = sb.cert.side_b.size();
      if (prm.verify) {
        sspd::SeparatorReport sr = sspd::verify_separator(sb.graph, sb.cert);
        rep.separator_ok = sr.ok;
        if (!sr.ok) {
          out.ok = false;
          std::ostringstream msg;
          msg << "separator failed: partition_ok=" << sr.partition_ok << ", crossing="
              << sr.crossing_edges << " (first " << sr.first_crossing.first << "-"
              << sr.first_crossing.second << ")";
          append_note(rep, msg.str());
        }
        if (pts.size() <= kStretchGuard) check_stretch(out, sb.graph, pts, prm.eps);
      }
      out.graph = std::move(sb.graph);
      out.cert = std::move(sb.cert);
    } else {
      throw std::runtime_error("unknown command: " + prm.cmd);
    }
  } catch (const std::exception& e) {
    out.ok = false;
    append_note(rep, std::string("error: ") + e.what());
  }

  rep.duration_ms =
      std::chrono::duration_cast<std::chrono::duration<double, std::milli>>(clock::now() - t0)
          .count();
  return out;
}

void write_text_file(const std::string& path, const std::function<void(std::ostream&)>& body) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  body(out);
  if (!out) throw std::runtime_error("write failed: " + path);
}

void write_reports(const std::string& prefix, const std::vector<sspd::RunReport>& reports) {
  write_text_file(prefix + ".jsonl", [&](std::ostream& o) { sspd::write_jsonl(o, reports); });
  write_text_file(prefix + ".csv", [&](std::ostream& o) { sspd::write_csv(o, reports); });
}

void write_artifacts(const std::string& prefix, const PipelineOutcome& out) {
  if (out.pairs)
    write_text_file(prefix + ".pairs.txt",
                    [&](std::ostream& o) { sspd::write_decomposition(o, *out.pairs); });
  if (out.graph)
    write_text_file(prefix + ".graph.txt", [&](std::ostream& o) { sspd::write_graph(o, *out.graph); });
  if (out.cert)
    write_text_file(prefix + ".cert.txt",
                    [&](std::ostream& o) { sspd::write_certificate(o, *out.cert); });
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"semi-separated pair decompositions, spanners, and separators"};
  app.require_subcommand(1);

  // gen ----------------------------------------------------------------------
  std::string gen_kind = "uniform", gen_out;
  std::size_t gen_n = 0, gen_dim = 2;
  std::uint64_t gen_seed = 1;
  CLI::App* gen = app.add_subcommand("gen", "generate a point set file");
  gen->add_option("--gen", gen_kind, "uniform|lattice|clustered|expspread")->capture_default_str();
  gen->add_option("--n", gen_n, "number of points")->required();
  gen->add_option("--dim", gen_dim, "dimension, 1..8")->capture_default_str();
  gen->add_option("--seed", gen_seed, "rng seed")->capture_default_str();
  gen->add_option("--out", gen_out, "output point file")->required();

  // run ----------------------------------------------------------------------
  PipelineParams run_prm;
  std::string run_input, run_gen, run_out = "run";
  std::size_t run_n = 0, run_dim = 2;
  CLI::App* run = app.add_subcommand("run", "run one construction and write artifacts");
  run->add_option("--cmd", run_prm.cmd, "wspd|sspd-simple|sspd-opt|sspd-opt-reduced|spanner|sep-spanner")
      ->required()
      ->check(CLI::IsMember(kCommands));
  run->add_option("--input", run_input, "point file (alternative to --gen)");
  run->add_option("--gen", run_gen, "generate points inline: uniform|lattice|clustered|expspread");
  run->add_option("--n", run_n, "point count for --gen");
  run->add_option("--dim", run_dim, "dimension for --gen")->capture_default_str();
  run->add_option("--eps", run_prm.eps, "separation parameter in (0, 1]")->capture_default_str();
  run->add_option("--seed", run_prm.seed, "rng seed")->capture_default_str();
  run->add_flag("--verify", run_prm.verify, "run exact oracles (n-guarded) and fail nonzero");
  run->add_option("--out", run_out, "artifact path prefix")->capture_default_str();

  // sweep ---------------------------------------------------------------------
  PipelineParams sweep_prm;
  std::string sweep_gen = "uniform", sweep_out = "sweep";
  std::size_t sweep_dim = 2;
  std::vector<std::size_t> sweep_sizes;
  CLI::App* sweep = app.add_subcommand("sweep", "run one construction across sizes in parallel");
  sweep->add_option("--cmd", sweep_prm.cmd, "construction, as in run")
      ->required()
      ->check(CLI::IsMember(kCommands));
  sweep->add_option("--gen", sweep_gen, "point generator")->capture_default_str();
  sweep->add_option("--sizes", sweep_sizes, "point counts, e.g. --sizes 1024 2048 4096")
      ->required()
      ->delimiter(',');
  sweep->add_option("--dim", sweep_dim, "dimension")->capture_default_str();
  sweep->add_option("--eps", sweep_prm.eps, "separation parameter")->capture_default_str();
  sweep->add_option("--seed", sweep_prm.seed, "rng seed")->capture_default_str();
  sweep->add_flag("--verify", sweep_prm.verify, "run exact oracles where n allows");
  sweep->add_option("--out", sweep_out, "report path prefix")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;  // keep --help at 0, any parse failure at 2
  }

  try {
    if (gen->parsed()) {
      sspd::PointSet pts = sspd::generate_points(gen_kind, gen_n, gen_dim, gen_seed);
      sspd::save_points(gen_out, pts);
      std::cout << "wrote " << pts.size() << " points (d=" << pts.dim() << ") to " << gen_out
                << "\n";
      return 0;
    }

    if (run->parsed()) {
      if (run_input.empty() == run_gen.empty())
        throw CLI::ValidationError("run", "give exactly one of --input and --gen");
      sspd::PointSet pts = run_input.empty()
                               ? sspd::generate_points(run_gen, run_n, run_dim, run_prm.seed)
                               : sspd::load_points(run_input);
      PipelineOutcome out = run_pipeline(pts, run_prm);
      out.report.generator = run_gen.empty() ? "file" : run_gen;
      out.report.input_file = run_input;
      write_artifacts(run_out, out);
      write_reports(run_out, {out.report});
      if (!out.ok) {
        std::cerr << "FAIL " << run_prm.cmd << ": " << out.report.note << "\n";
        return 1;
      }
      std::cout << "ok " << run_prm.cmd << " n=" << pts.size() << " -> " << run_out << ".jsonl\n";
      return 0;
    }

    // sweep: one worker per size, reports merged in input order.
    std::vector<PipelineOutcome> outcomes(sweep_sizes.size());
    std::vector<std::thread> workers;
    workers.reserve(sweep_sizes.size());
    for (std::size_t i = 0; i < sweep_sizes.size(); ++i) {
      workers.emplace_back([&, i] {
        sspd::PointSet pts =
            sspd::generate_points(sweep_gen, sweep_sizes[i], sweep_dim, sweep_prm.seed);
        PipelineParams prm = sweep_prm;
        outcomes[i] = run_pipeline(pts, prm);
        outcomes[i].report.generator = sweep_gen;
      });
    }
    for (std::thread& w : workers) w.join();

    std::vector<sspd::RunReport> reports;
    reports.reserve(outcomes.size());
    bool all_ok = true;
    for (const PipelineOutcome& o : outcomes) {
      reports.push_back(o.report);
      if (!o.ok) {
        all_ok = false;
        std::cerr << "FAIL " << sweep_prm.cmd << " n=" << o.report.n << ": " << o.report.note
                  << "\n";
      }
    }
    write_reports(sweep_out, reports);
    std::cout << (all_ok ? "ok " : "FAIL ") << sweep_prm.cmd << " sweep of "
              << sweep_sizes.size() << " sizes -> " << sweep_out << ".jsonl\n";
    return all_ok ? 0 : 1;
  } catch (const CLI::Error& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
