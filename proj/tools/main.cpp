#include <sys/resource.h>

#include <chrono>
#include <iostream>

#include <CLI11.hpp>

#include "commands.hpp"

using namespace parthom::cli;

namespace {

long peak_rss_kib() {
  rusage usage{};
  getrusage(RUSAGE_SELF, &usage);
  return usage.ru_maxrss;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Homology of set-partition order complexes"};
  app.require_subcommand(1);
  app.set_version_flag("--version", version());
  bool metadata = false;
  app.add_flag("--metadata", metadata, "Append wall time (ms) and peak RSS (KiB); breaks byte-identical output");

  BettiArgs betti;
  auto* b = app.add_subcommand("betti", "Betti numbers and torsion of a partition complex");
  b->add_option("--kind", betti.kind)->check(CLI::IsMember({"delta", "boundary-delta", "xi2"}))->required();
  b->add_option("--n", betti.n, "Ground set size")->required();
  b->add_option("--coeff", betti.coeff)->check(CLI::IsMember({"q", "z"}));
  b->add_flag("--reduced", betti.reduced);
  b->add_option("--format", betti.format)->check(CLI::IsMember({"json", "csv", "text"}));
  b->add_option("--facets-out", betti.facets_out, "Write maximal faces to FILE");
  b->add_flag("--stretch", betti.stretch, "Allow N=8");
  b->add_option("--mem-budget-mb", betti.mem_budget_mb, "Abort elimination beyond this estimate");

  EulerArgs euler;
  auto* e = app.add_subcommand("euler", "Euler characteristic identity for Delta(N) minus Xi_2(N)");
  e->add_option("--n", euler.n)->required();
  e->add_option("--method", euler.method)
      ->check(CLI::IsMember({"simplex", "partition-sum", "permutation", "all"}));

  SpectralArgs spectral;
  auto* s = app.add_subcommand("spectral", "E^1 / E^2 rank tables");
  s->add_option("--n", spectral.n)->required();
  s->add_option("--m", spectral.m)->required();
  s->add_option("--page", spectral.page)->check(CLI::IsMember({1, 2}));
  s->add_flag("--render", spectral.render, "Also print the page as a text grid");
  s->add_flag("--computed", spectral.computed, "Build E^1 from relative homology (N <= 6)");
  s->add_flag("--override-lemma", spectral.override_lemma, "Allow m <= N/2 - 1; marks the page unverified");

  ReportArgs report;
  auto* r = app.add_subcommand("report", "Check every claim for one (N, m)");
  r->add_option("--n", report.n)->required();
  r->add_option("--m", report.m, "Odd m; default is the smallest admissible");
  r->add_flag("--stretch", report.stretch, "Allow N=8");
  r->add_option("--mem-budget-mb", report.mem_budget_mb);

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& ok) {
    return app.exit(ok);
  } catch (const CLI::ParseError& err) {
    app.exit(err);
    return kUsage;
  }

  const auto start = std::chrono::steady_clock::now();
  Report out;
  if (b->parsed()) out = guarded("betti", [&] { return cmd_betti(betti); });
  else if (e->parsed()) out = guarded("euler", [&] { return cmd_euler(euler); });
  else if (s->parsed()) out = guarded("spectral", [&] { return cmd_spectral(spectral); });
  else out = guarded("report", [&] { return cmd_report(report); });

  if (metadata) {
    const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
        std::chrono::steady_clock::now() - start);
    out.json["metadata"] = {{"wall_ms", ms.count()}, {"peak_rss_kib", peak_rss_kib()}};
  }

  if (out.text_only && out.exit_code == kOk) {
    std::cout << out.text;
  } else {
    (out.exit_code == kUsage ? std::cerr : std::cout) << out.json.dump(2) << '\n';
    if (!out.text.empty()) std::cout << '\n' << out.text;
  }
  return out.exit_code;
}
