// Command line front end. Exit status: 0 all records pass or waived, 1 a record failed, 2 bad input.

#include "adelic/harness/identities.hpp"
#include "adelic/harness/pipeline.hpp"
#include "adelic/harness/search.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

using namespace adelic;
using namespace adelic::harness;

namespace {

void summarize(const Report& rep) {
  for (const auto& r : rep.records) std::cout << status_name(r.status) << '\t' << r.name << '\n';
  std::cout << "total " << rep.records.size() << " pass " << rep.count(Status::pass) << " fail "
            << rep.count(Status::fail) << " waived " << rep.count(Status::waived) << '\n';
}

int finish(const Report& rep, const std::string& out) {
  summarize(rep);
  if (!out.empty()) write_report(rep, out);
  return rep.all_pass() ? 0 : 1;
}

IntMatrix read_matrix(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw invalid_input("cannot open matrix file " + path);
  long rows = 0, cols = 0;
  if (!(in >> rows >> cols) || rows < 1 || cols < 1) throw invalid_input("matrix header must be 'rows cols'");
  IntMatrix A(static_cast<size_t>(rows), IntVec(static_cast<size_t>(cols)));
  for (auto& row : A)
    for (auto& v : row) {
      std::string tok;
      if (!(in >> tok)) throw invalid_input("matrix file is short");
      try {
        v = Int(tok);
      } catch (const std::exception&) {
        throw invalid_input("bad matrix entry " + tok);
      }
    }
  std::string extra;
  if (in >> extra) throw invalid_input("matrix file has trailing data");
  return A;
}

int run_siegel(const std::string& path, std::optional<long> bound) {
  IntMatrix A = read_matrix(path);
  long n = static_cast<long>(A[0].size());
  if (rank_q(A) < A.size()) throw invalid_input("matrix rows must be independent");
  if (static_cast<long>(A.size()) >= n) throw invalid_input("need fewer rows than columns");
  SiegelResult s = bound ? siegel_solve(A, n, Int(*bound)) : siegel_solve(A, n);
  for (size_t i = 0; i < s.w.size(); ++i) std::cout << (i ? " " : "") << s.w[i];
  std::cout << '\n';
  std::cerr << "sup " << s.sup << " det " << s.bv.det << " U " << s.bv.U << " kernel_dim " << s.kernel_dim << '\n';
  return s.within_bv_bound && s.within_bound ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"adelic: cyclotomic identity suites, norm-equation search and the adelic pipeline"};
  app.require_subcommand(1);
  RunConfig cfg;
  long x = 0, y = 0, q = 0, e = -1, truncation = -1, threads = 0;
  std::string in_path, matrix_path;
  std::optional<long> siegel_bound;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--p", cfg.p, "odd prime")->check(CLI::PositiveNumber);
    sub->add_option("--seed", cfg.seed, "random seed");
    sub->add_option("--out", cfg.out, "report basename; writes .json and .tsv");
    sub->add_option("--threads", threads, "worker threads, 0 for all cores");
    sub->add_flag("--timing", cfg.timing, "record wall time per record");
  };

  auto* ident = app.add_subcommand("identities", "identity suite for one prime");
  common(ident);
  ident->add_option("--precision", truncation, "series truncation M");
  ident->add_option("--samples", cfg.samples, "random elements for sampled identities");

  auto* srch = app.add_subcommand("search", "exhaustive search in the box |x|, |y| <= B");
  common(srch);
  srch->add_option("--bound", cfg.bound, "box size B");
  srch->add_option("--e", e, "0 or 1; both when omitted");
  srch->add_option("--q", q, "prime exponent for the q-variant");

  auto* pipe = app.add_subcommand("pipeline", "adelic pipeline on a solution or pseudo-solution");
  common(pipe);
  pipe->add_option("--x", x)->required();
  pipe->add_option("--y", y)->required();
  pipe->add_option("--precision", cfg.precision, "work modulo y^N");
  pipe->add_option("--level", cfg.level, "level for the short orthogonal vector");
  pipe->add_flag("--waive-scale", cfg.waive_scale, "allow |y| <= 2p in the perturbation");

  auto* rep = app.add_subcommand("report", "re-emit a JSON report as JSON and TSV");
  rep->add_option("input", in_path, "report .json")->required();
  rep->add_option("--out", cfg.out, "output basename")->required();

  auto* sieg = app.add_subcommand("siegel", "smallest sup-norm integer kernel vector");
  sieg->add_option("matrix", matrix_path, "file: 'rows cols' then the rows")->required();
  sieg->add_option("--bound", siegel_bound, "required sup bound");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& err) {
    int rc = app.exit(err);
    return rc == 0 ? 0 : 2;
  }

  try {
    cfg.threads = threads;
    if (pipe->parsed()) cfg.x = x, cfg.y = y;
    if (q) cfg.q = q;
    if (e >= 0) cfg.e = static_cast<int>(e);
    if (truncation >= 0) cfg.truncation = truncation;
    if (ident->parsed()) {
      cfg.command = "identities";
      return finish(run_identities(cfg), cfg.out);
    }
    if (srch->parsed()) {
      cfg.command = "search";
      return finish(run_search(cfg), cfg.out);
    }
    if (pipe->parsed()) {
      cfg.command = "pipeline";
      return finish(run_pipeline(cfg), cfg.out);
    }
    if (rep->parsed()) {
      std::ifstream in(in_path);
      if (!in) throw invalid_input("cannot open " + in_path);
      Json j;
      try {
        j = Json::parse(in);
      } catch (const std::exception& ex) {
        throw invalid_input(std::string("bad report: ") + ex.what());
      }
      return finish(from_json(j), cfg.out);
    }
    return run_siegel(matrix_path, siegel_bound);
  } catch (const invalid_input& ex) {
    std::cerr << "invalid input: " << ex.what() << '\n';
    return 2;
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << '\n';
    return 1;
  }
}
