// salem: command-line front end for P-representations and the digit-flip map.

#include "salem/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

namespace {

struct Options {
  std::string p = "1/2,1/2";
  std::string flips = "none";
  std::string x;
  std::size_t depth = 32;
  std::size_t rank = 12;
  std::string tol = "1/1000000000000";
  std::uint64_t seed = 1;
  std::string out;
  std::string format;
  std::size_t count = 16;
  std::size_t points = 100;
  std::vector<std::size_t> ranks{6, 8, 10, 12, 14};
  int u = -1;
  bool exact = false;
};

void add_system(CLI::App *cmd, Options &o) {
  cmd->add_option("--p", o.p, "digit weights as rationals, e.g. 1/5,3/10,1/2");
  cmd->add_option("--flips", o.flips, "none | all | finite:2,5 | mask:<pre>;<period>");
  cmd->add_option("--format", o.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  cmd->add_option("--out", o.out, "write output to this file instead of stdout");
}

} // namespace

int main(int argc, char **argv) {
  using namespace salem;
  Options o;
  CLI::App app{"P-representations, the digit-flip map g, its integral, jumps and graph"};
  app.require_subcommand(1);

  auto *convert = app.add_subcommand("convert", "digits, tail, class and cylinder of x");
  add_system(convert, o);
  convert->add_option("--x", o.x, "point in [0, 1] as a rational")->required();
  convert->add_option("--depth", o.depth, "number of digits");

  auto *evalg = app.add_subcommand("eval-g", "exact value or enclosure of g(x)");
  add_system(evalg, o);
  evalg->add_option("--x", o.x, "point in [0, 1] as a rational")->required();
  evalg->add_option("--depth", o.depth, "digits used when the expansion does not close");

  auto *integral = app.add_subcommand("integral", "closed form, series and Riemann enclosures of the integral of g");
  add_system(integral, o);
  integral->add_option("--tol", o.tol, "series tolerance as a rational");
  integral->add_option("--rank", o.rank, "Riemann partition rank");

  auto *jumps = app.add_subcommand("jumps", "one-sided limits of g at the first P-rationals");
  add_system(jumps, o);
  jumps->add_option("--count", o.count, "number of P-rationals");

  auto *graph = app.add_subcommand("graph", "point cloud of the graph of g");
  add_system(graph, o);
  graph->add_option("--depth", o.depth, "composition depth");
  graph->add_flag("--exact", o.exact, "print coordinates as exact rationals");

  auto *dimension = app.add_subcommand("dimension", "entropy-sum dimension estimates and the Moran root");
  add_system(dimension, o);
  dimension->add_option("--ranks", o.ranks, "ranks for the entropy sums")->delimiter(',');
  dimension->add_option("--u", o.u, "digit u of S_(P,u); omit to skip the Moran solve");
  dimension->add_option("--tol", o.tol, "Moran residual tolerance");

  auto *scan = app.add_subcommand("scan-derivative", "cylinder derivative ratios at random points");
  add_system(scan, o);
  scan->add_option("--points", o.points, "number of samples");
  scan->add_option("--rank", o.rank, "prefix length");
  scan->add_option("--seed", o.seed, "random seed");

  CLI11_PARSE(app, argc, argv);

  try {
    const ProbVector pv = cli::parse_prob_vector(o.p);
    const BarredSystem sys{pv, cli::parse_flip_set(o.flips)};
    cli::Json doc;
    std::string fmt = "json";
    if (app.got_subcommand(convert)) {
      doc = cli::cmd_convert(parse_rational(o.x), pv, o.depth);
    } else if (app.got_subcommand(evalg)) {
      doc = cli::cmd_eval_g(parse_rational(o.x), sys, o.depth);
    } else if (app.got_subcommand(integral)) {
      doc = cli::cmd_integral(sys, parse_rational(o.tol), o.rank);
    } else if (app.got_subcommand(jumps)) {
      doc = cli::cmd_jumps(sys, o.count);
      fmt = "csv";
    } else if (app.got_subcommand(graph)) {
      doc = cli::cmd_graph(sys, o.depth, o.exact);
      fmt = "csv";
    } else if (app.got_subcommand(dimension)) {
      const std::optional<int> u = o.u >= 0 ? std::optional<int>(o.u) : std::nullopt;
      doc = cli::cmd_dimension(sys, o.ranks, u, to_long_double(parse_rational(o.tol)));
    } else if (app.got_subcommand(scan)) {
      doc = cli::cmd_scan_derivative(sys, o.points, o.rank, o.seed);
      fmt = "csv";
    }
    if (!o.format.empty())
      fmt = o.format;
    const std::string text = cli::render(doc, fmt);
    if (o.out.empty()) {
      std::cout << text;
    } else {
      std::ofstream f(o.out);
      if (!f)
        throw error(errc::invalid_argument, "cannot open " + o.out);
      f << text;
    }
  } catch (const salem::error &e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
