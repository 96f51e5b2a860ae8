#include "nlr/cli.h"

#include <CLI11.hpp>

#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "nlr/analysis.h"
#include "nlr/bench.h"
#include "nlr/filters.h"
#include "nlr/iterate.h"
#include "nlr/parallel.h"
#include "nlr/rearrange.h"

namespace nlr::cli {
namespace {

double parse_double(const std::string& text, const std::string& flag) {
  double value = 0;
  const char* first = text.data();
  const char* last = first + text.size();
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last || !std::isfinite(value)) {
    throw UsageError(flag + ": '" + text + "' is not a number");
  }
  return value;
}

int parse_int(const std::string& text, const std::string& flag) {
  int value = 0;
  const char* first = text.data();
  const char* last = first + text.size();
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last) {
    throw UsageError(flag + ": '" + text + "' is not an integer");
  }
  return value;
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::string part;
  std::istringstream in(text);
  while (std::getline(in, part, sep)) parts.push_back(part);
  if (!text.empty() && text.back() == sep) parts.emplace_back();
  return parts;
}

std::string format_double(double v) {
  std::ostringstream out;
  out << std::setprecision(17) << v;
  return out.str();
}

std::string command_name(Command c) {
  switch (c) {
    case Command::kDenoise: return "denoise";
    case Command::kCheckEquivalence: return "check-equivalence";
    case Command::kDumpRearrangement: return "dump-rearrangement";
    case Command::kAnalyzeExpansion: return "analyze-expansion";
    case Command::kBench: return "bench";
  }
  return "";
}

std::string kernel_text(const KernelSpec& k) {
  if (k.family == KernelSpec::Family::kGaussian) return "gaussian";
  return "power:" + format_double(k.p) + "," + format_double(k.k0);
}

std::string weight_text(const WeightArg& w) {
  switch (w.kind) {
    case WeightArg::Kind::kConstant: return "const";
    case WeightArg::Kind::kMap: return "map:" + w.path;
    case WeightArg::Kind::kBall: return "ball:" + format_double(w.rho);
    case WeightArg::Kind::kBilateral:
      return "bilateral:" + format_double(w.rho) + "," + std::to_string(w.m);
  }
  return "";
}

QuantizeMode parse_quantize(const std::string& text) {
  if (text == "native") return QuantizeMode::native();
  if (text.rfind("uniform:", 0) == 0) {
    const int bins = parse_int(text.substr(8), "--quantize");
    if (bins < 1) throw UsageError("--quantize: uniform needs at least 1 bin");
    return QuantizeMode::uniform(bins);
  }
  throw UsageError("--quantize: expected native or uniform:N, got '" + text +
                   "'");
}

std::string quantize_text(const QuantizeMode& q) {
  if (q.kind == QuantizeMode::Kind::kNative) return "native";
  return "uniform:" + std::to_string(q.bins);
}

}  // namespace

KernelSpec parse_kernel(const std::string& text, double h) {
  if (text == "gaussian") return KernelSpec::gaussian(h);
  if (text.rfind("power:", 0) == 0) {
    const auto parts = split(text.substr(6), ',');
    if (parts.size() != 2) throw UsageError("--kernel: expected power:P,K0");
    const KernelSpec k = KernelSpec::power_law(
        h, parse_double(parts[0], "--kernel"), parse_double(parts[1], "--kernel"));
    try {
      k.validate();
    } catch (const std::invalid_argument& e) {
      throw UsageError(std::string("--kernel: ") + e.what());
    }
    return k;
  }
  throw UsageError("--kernel: expected gaussian or power:P,K0, got '" + text +
                   "'");
}

WeightArg parse_weight(const std::string& text) {
  WeightArg w;
  if (text == "const") return w;
  const auto colon = text.find(':');
  const std::string kind = text.substr(0, colon);
  const std::string rest = colon == std::string::npos ? "" : text.substr(colon + 1);
  if (kind == "map" && !rest.empty()) {
    w.kind = WeightArg::Kind::kMap;
    w.path = rest;
  } else if (kind == "ball" && !rest.empty()) {
    w.kind = WeightArg::Kind::kBall;
    w.rho = parse_double(rest, "--weight");
    if (!(w.rho > 0)) throw UsageError("--weight: ball radius must be > 0");
  } else if (kind == "bilateral" && !rest.empty()) {
    const auto parts = split(rest, ',');
    if (parts.size() != 2) throw UsageError("--weight: expected bilateral:RHO,M");
    w.kind = WeightArg::Kind::kBilateral;
    w.rho = parse_double(parts[0], "--weight");
    w.m = parse_int(parts[1], "--weight");
    if (!(w.rho > 0)) throw UsageError("--weight: bilateral rho must be > 0");
    if (w.m < 1) throw UsageError("--weight: bilateral M must be >= 1");
  } else {
    throw UsageError(
        "--weight: expected const, map:PATH, ball:RHO or bilateral:RHO,M, got "
        "'" + text + "'");
  }
  return w;
}

RunConfig parse_args(const std::vector<std::string>& args) {
  RunConfig cfg;
  CLI::App app{"Nonlocal neighborhood filters on the level-set representation",
               "nlr"};
  app.require_subcommand(1);
  // "-h" would collide with the bandwidth flag --h.
  app.set_help_flag("--help", "Print this help message and exit");

  std::string kernel = "gaussian", weight, quantize = "native", format = "P5";
  std::string h = "20", tol = "0", h_list;
  auto common = [&](CLI::App* sub) {
    sub->set_help_flag("--help", "Print this help message and exit");
    sub->add_option("--threads", cfg.threads, "OpenMP threads (0 = auto)");
    sub->add_option("--seed", cfg.seed, "Random seed");
  };
  auto filter_opts = [&](CLI::App* sub) {
    sub->add_option("--kernel", kernel, "gaussian | power:P,K0");
    sub->add_option("--h", h, "Range bandwidth");
    sub->add_option("--weight", weight,
                    "const | map:PATH | ball:RHO | bilateral:RHO,M");
  };

  CLI::App* denoise = app.add_subcommand("denoise", "Filter a PGM image");
  common(denoise);
  filter_opts(denoise);
  denoise->add_option("--input", cfg.input, "Input PGM");
  denoise->add_option("--output", cfg.output, "Output PGM");
  denoise->add_option("--iters", cfg.iters, "Maximum iterations");
  denoise->add_option("--tol", tol, "Relative sup-norm stopping tolerance");
  denoise->add_option("--dump-history", cfg.dump_history,
                      "CSV of level values per iteration");
  denoise->add_option("--quantize", quantize, "native | uniform:N");
  denoise->add_option("--format", format, "P5 | P2");

  CLI::App* check = app.add_subcommand(
      "check-equivalence", "Compare the rearranged and direct filters");
  common(check);
  filter_opts(check);
  check->add_option("--trials", cfg.trials, "Random images per family");
  check->add_option("--size", cfg.size, "Image side length");
  check->add_option("--levels", cfg.levels, "Native levels per image");
  check->add_option("--output", cfg.output, "CSV destination");

  CLI::App* dump = app.add_subcommand("dump-rearrangement",
                                      "Write u_* breakpoints as CSV");
  dump->alias("rearrange-dump");
  common(dump);
  dump->add_option("--input", cfg.input, "Input PGM");
  dump->add_option("--output", cfg.output, "CSV destination");
  dump->add_option("--quantize", quantize, "native | uniform:N");

  CLI::App* analyze = app.add_subcommand(
      "analyze-expansion", "Residuals of the small-h one-step expansion");
  common(analyze);
  analyze->add_option("--profile", cfg.profile, "exp | linear | sigmoid");
  analyze->add_option("--h", h_list, "Comma-separated, strictly decreasing");
  analyze->add_option("--t", cfg.t_range, "a:b:step");
  analyze->add_option("--constants", cfg.constants, "derived | stated");
  analyze->add_option("--out,--output", cfg.output, "CSV destination");

  CLI::App* bench = app.add_subcommand("bench", "Complexity benchmarks");
  common(bench);
  bench->add_option("--suite", cfg.suite, "complexity | kernels");
  bench->add_option("--out,--output", cfg.output, "CSV destination");
  bench->add_flag("--parallel", cfg.parallel, "Use the OpenMP thread pool");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    for (CLI::App* sub : app.get_subcommands()) throw HelpRequested(sub->help());
    throw HelpRequested(app.help());
  } catch (const CLI::ParseError& e) {
    throw UsageError(e.what());
  }

  if (denoise->parsed()) cfg.command = Command::kDenoise;
  if (check->parsed()) cfg.command = Command::kCheckEquivalence;
  if (dump->parsed()) cfg.command = Command::kDumpRearrangement;
  if (analyze->parsed()) cfg.command = Command::kAnalyzeExpansion;
  if (bench->parsed()) cfg.command = Command::kBench;

  const double h_value = parse_double(h, "--h");
  if (!(h_value > 0)) throw UsageError("--h: must be positive, got " + h);
  cfg.kernel = parse_kernel(kernel, h_value);
  if (!weight.empty()) cfg.weight = parse_weight(weight);
  cfg.quantize = parse_quantize(quantize);
  cfg.tol = parse_double(tol, "--tol");
  if (cfg.tol < 0) throw UsageError("--tol: must be >= 0");
  if (format == "P5") {
    cfg.format = PgmFormat::kBinary;
  } else if (format == "P2") {
    cfg.format = PgmFormat::kAscii;
  } else {
    throw UsageError("--format: expected P5 or P2, got '" + format + "'");
  }
  if (cfg.threads < 0) throw UsageError("--threads: must be >= 0");

  switch (cfg.command) {
    case Command::kDenoise:
      if (cfg.input.empty()) throw UsageError("denoise: --input is required");
      if (cfg.output.empty()) throw UsageError("denoise: --output is required");
      if (cfg.iters < 1) throw UsageError("--iters: must be >= 1");
      break;
    case Command::kCheckEquivalence:
      if (cfg.trials < 1) throw UsageError("--trials: must be >= 1");
      if (cfg.size < 1) throw UsageError("--size: must be >= 1");
      if (cfg.levels < 1 || cfg.levels > cfg.size * cfg.size) {
        throw UsageError("--levels: must be in [1, size^2]");
      }
      break;
    case Command::kDumpRearrangement:
      if (cfg.input.empty()) {
        throw UsageError("dump-rearrangement: --input is required");
      }
      break;
    case Command::kAnalyzeExpansion: {
      try {
        profile_by_name(cfg.profile);
        parse_range(cfg.t_range);
      } catch (const std::invalid_argument& e) {
        throw UsageError(std::string("analyze-expansion: ") + e.what());
      }
      if (!h_list.empty()) {
        cfg.h_list.clear();
        for (const auto& part : split(h_list, ',')) {
          cfg.h_list.push_back(parse_double(part, "--h"));
        }
      }
      for (std::size_t i = 0; i < cfg.h_list.size(); ++i) {
        if (!(cfg.h_list[i] > 0) ||
            (i > 0 && !(cfg.h_list[i] < cfg.h_list[i - 1]))) {
          throw UsageError("--h: values must be positive and strictly decreasing");
        }
      }
      if (cfg.h_list.size() < 4) throw UsageError("--h: need at least 4 values");
      if (cfg.constants != "derived" && cfg.constants != "stated") {
        throw UsageError("--constants: expected derived or stated");
      }
      break;
    }
    case Command::kBench:
      if (cfg.suite != "complexity" && cfg.suite != "kernels") {
        throw UsageError("--suite: expected complexity or kernels");
      }
      break;
  }
  return cfg;
}

std::vector<std::string> serialize(const RunConfig& cfg) {
  std::vector<std::string> out{command_name(cfg.command)};
  auto opt = [&](const std::string& flag, const std::string& value) {
    out.push_back(flag);
    out.push_back(value);
  };
  opt("--threads", std::to_string(cfg.threads));
  opt("--seed", std::to_string(cfg.seed));
  auto filter = [&] {
    opt("--kernel", kernel_text(cfg.kernel));
    opt("--h", format_double(cfg.kernel.h));
    if (cfg.weight) opt("--weight", weight_text(*cfg.weight));
  };
  switch (cfg.command) {
    case Command::kDenoise:
      filter();
      opt("--input", cfg.input);
      opt("--output", cfg.output);
      opt("--iters", std::to_string(cfg.iters));
      opt("--tol", format_double(cfg.tol));
      if (!cfg.dump_history.empty()) opt("--dump-history", cfg.dump_history);
      opt("--quantize", quantize_text(cfg.quantize));
      opt("--format", cfg.format == PgmFormat::kBinary ? "P5" : "P2");
      break;
    case Command::kCheckEquivalence:
      filter();
      opt("--trials", std::to_string(cfg.trials));
      opt("--size", std::to_string(cfg.size));
      opt("--levels", std::to_string(cfg.levels));
      if (!cfg.output.empty()) opt("--output", cfg.output);
      break;
    case Command::kDumpRearrangement:
      opt("--input", cfg.input);
      if (!cfg.output.empty()) opt("--output", cfg.output);
      opt("--quantize", quantize_text(cfg.quantize));
      break;
    case Command::kAnalyzeExpansion: {
      opt("--profile", cfg.profile);
      std::string hs;
      for (double h : cfg.h_list) hs += (hs.empty() ? "" : ",") + format_double(h);
      opt("--h", hs);
      opt("--t", cfg.t_range);
      opt("--constants", cfg.constants);
      if (!cfg.output.empty()) opt("--out", cfg.output);
      break;
    }
    case Command::kBench:
      opt("--suite", cfg.suite);
      if (!cfg.output.empty()) opt("--out", cfg.output);
      if (cfg.parallel) out.push_back("--parallel");
      break;
  }
  return out;
}

std::vector<EquivalenceCase> check_equivalence(
    int trials, int size, int levels, std::uint64_t seed,
    const KernelSpec& kernel, const std::vector<WeightSpec>& weights) {
  struct Family {
    std::string name;
    std::function<WeightSpec(std::uint64_t trial_seed)> make;
  };
  std::vector<Family> families;
  auto name_of = [](const WeightSpec& w) -> std::string {
    switch (w.index()) {
      case 0: return "constant";
      case 1: return "weight_map";
      case 2: return "ball";
      default: return "bilateral";
    }
  };
  if (weights.empty()) {
    families.push_back({"constant", [](std::uint64_t) -> WeightSpec {
                          return ConstantWeight{};
                        }});
    families.push_back({"weight_map", [size](std::uint64_t s) -> WeightSpec {
                          return WeightMap{synthesize(
                              SynthesisKind::random(s ^ 0x5bd1e995u, 4), size,
                              size)};
                        }});
    families.push_back({"ball", [](std::uint64_t) -> WeightSpec {
                          return BallWeight{2.0};
                        }});
    families.push_back({"bilateral", [](std::uint64_t) -> WeightSpec {
                          return GaussianSpatialWeight{2.0, 4};
                        }});
  } else {
    for (const WeightSpec& w : weights) {
      families.push_back({name_of(w), [w](std::uint64_t) { return w; }});
    }
  }

  std::vector<EquivalenceCase> worst;
  for (const Family& family : families) {
    EquivalenceCase w{family.name};
    for (int trial = 0; trial < trials; ++trial) {
      const std::uint64_t trial_seed = seed * 1000003u + std::uint64_t(trial);
      const Image img =
          synthesize(SynthesisKind::random(trial_seed, levels), size, size);
      const FilterConfig cfg{kernel, family.make(trial_seed)};
      const Image fast = rearranged_filter(quantize(img), cfg);
      const Image direct = direct_filter(img, cfg);
      for (std::size_t p = 0; p < img.size(); ++p) {
        const double diff = std::abs(fast[p] - direct[p]);
        if (w.trial < 0 || diff > w.abs_diff) {
          w = {family.name, trial, p, fast[p], direct[p], diff};
        }
      }
    }
    worst.push_back(w);
  }
  return worst;
}

namespace {

// Writes to the configured file, or to `fallback` when no path is set.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) : stream_(&fallback) {
    if (!path.empty()) {
      file_.open(path, std::ios::binary | std::ios::trunc);
      if (!file_) throw PgmError("cannot open '" + path + "' for writing");
      stream_ = &file_;
    }
  }
  std::ostream& get() { return *stream_; }

 private:
  std::ofstream file_;
  std::ostream* stream_;
};

WeightSpec load_weight(const WeightArg& arg, const Image& img) {
  switch (arg.kind) {
    case WeightArg::Kind::kConstant: return ConstantWeight{};
    case WeightArg::Kind::kMap: {
      Image wbar = load_pgm(arg.path);
      if (wbar.width() != img.width() || wbar.height() != img.height()) {
        throw std::invalid_argument("weight map '" + arg.path +
                                    "' does not match the input size");
      }
      return WeightMap{std::move(wbar)};
    }
    case WeightArg::Kind::kBall: return BallWeight{arg.rho};
    case WeightArg::Kind::kBilateral:
      return GaussianSpatialWeight{arg.rho, arg.m};
  }
  return ConstantWeight{};
}

int run_denoise(const RunConfig& cfg, std::ostream& err) {
  const Image input = load_pgm(cfg.input);
  const QuantizedImage base = quantize(input, cfg.quantize);
  const WeightSpec weight =
      load_weight(cfg.weight.value_or(WeightArg{}), input);

  Image result = input;
  if (is_position_independent(weight)) {
    std::optional<std::vector<double>> w;
    if (const auto* map = std::get_if<WeightMap>(&weight)) {
      w.emplace(map->wbar.pixels().begin(), map->wbar.pixels().end());
    }
    const IterationState final_state =
        run(make_iteration_state(base, w, !cfg.dump_history.empty()),
            cfg.kernel, cfg.iters, cfg.tol);
    result = reconstruct(base, final_state.levels);
    err << "denoise: " << final_state.step << " iteration(s), "
        << base.num_levels() << " levels\n";
    if (!cfg.dump_history.empty()) {
      Sink sink(cfg.dump_history, err);
      std::ostream& csv = sink.get();
      csv << "n";
      for (std::size_t i = 1; i <= base.num_levels(); ++i) csv << ",v" << i;
      csv << '\n' << std::setprecision(17);
      for (std::size_t n = 0; n < final_state.history.size(); ++n) {
        csv << n;
        for (double v : final_state.history[n]) csv << ',' << v;
        csv << '\n';
      }
    }
  } else {
    if (!cfg.dump_history.empty()) {
      throw std::invalid_argument(
          "--dump-history needs a const or map weight (level-based iteration)");
    }
    const FilterConfig filter{cfg.kernel, weight};
    QuantizedImage current = base;
    int done = 0;
    for (; done < cfg.iters;) {
      const Image next = rearranged_filter(current, filter);
      ++done;
      double change = 0;
      for (std::size_t p = 0; p < next.size(); ++p) {
        change = std::max(change, std::abs(next[p] - current.value(p)));
      }
      result = next;
      if (change / input.max_value() < cfg.tol) break;
      current = quantize(next);
    }
    err << "denoise: " << done << " iteration(s)\n";
  }
  save_pgm(result, cfg.output, cfg.format);
  return 0;
}

int run_check(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  std::vector<WeightSpec> weights;
  if (cfg.weight) {
    if (cfg.weight->kind == WeightArg::Kind::kMap) {
      const Image wbar = load_pgm(cfg.weight->path);
      if (wbar.width() != cfg.size || wbar.height() != cfg.size) {
        throw std::invalid_argument("weight map must be size x size");
      }
      weights.push_back(WeightMap{wbar});
    } else {
      weights.push_back(load_weight(*cfg.weight, Image::filled(1, 1, 0)));
    }
  }
  const auto results = check_equivalence(cfg.trials, cfg.size, cfg.levels,
                                         cfg.seed, cfg.kernel, weights);
  Sink sink(cfg.output, out);
  std::ostream& csv = sink.get();
  csv << "family,trial,pixel,rearranged,direct,abs_diff\n"
      << std::setprecision(17);
  bool ok = true;
  for (const EquivalenceCase& c : results) {
    csv << c.family << ',' << c.trial << ',' << c.pixel << ',' << c.rearranged
        << ',' << c.direct << ',' << c.abs_diff << '\n';
    if (!(c.abs_diff <= kEquivalenceTolerance)) {
      ok = false;
      err << "check-equivalence: " << c.family << " mismatch "
          << c.abs_diff << " > " << kEquivalenceTolerance << '\n';
    }
  }
  return ok ? 0 : 1;
}

int run_dump(const RunConfig& cfg, std::ostream& out) {
  const Image input = load_pgm(cfg.input);
  const Rearrangement r = decreasing_rearrangement(quantize(input, cfg.quantize));
  Sink sink(cfg.output, out);
  std::ostream& csv = sink.get();
  csv << "s,value\n" << std::setprecision(17);
  for (std::size_t i = 0; i < r.num_levels(); ++i) {
    csv << r.breakpoints()[i] << ',' << r.value(i) << '\n';
  }
  csv << r.measure() << ',' << r.values().back() << '\n';
  return 0;
}

int run_analyze(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const ExpansionConstants constants = cfg.constants == "stated"
                                           ? ExpansionConstants::stated()
                                           : ExpansionConstants::derived();
  const ExpansionReport report =
      order_study(profile_by_name(cfg.profile), parse_range(cfg.t_range),
                  cfg.h_list, constants, cfg.kernel.family);
  Sink sink(cfg.output, out);
  std::ostream& csv = sink.get();
  csv << "t,h,actual,predicted,residual,residual_over_h2\n"
      << std::setprecision(17);
  for (const ExpansionRow& row : report.rows) {
    csv << row.t << ',' << row.h << ',' << row.actual << ',' << row.predicted
        << ',' << row.residual << ',' << row.residual_over_h2 << '\n';
  }
  for (std::size_t i = 0; i < report.h_values.size(); ++i) {
    err << "h=" << report.h_values[i]
        << " max|residual|/h^2=" << report.max_ratio[i] << '\n';
  }
  return 0;
}

int run_bench_command(const RunConfig& cfg, std::ostream& out) {
  const auto cases =
      cfg.suite == "kernels" ? kernels_suite() : complexity_suite(cfg.parallel);
  const auto rows = run_bench(cases);
  Sink sink(cfg.output, out);
  write_bench_csv(rows, sink.get());
  return 0;
}

}  // namespace

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    const ScopedThreads threads(cfg.threads > 0 ? cfg.threads
                                                : threads_from_env(0));
    switch (cfg.command) {
      case Command::kDenoise: return run_denoise(cfg, err);
      case Command::kCheckEquivalence: return run_check(cfg, out, err);
      case Command::kDumpRearrangement: return run_dump(cfg, out);
      case Command::kAnalyzeExpansion: return run_analyze(cfg, out, err);
      case Command::kBench: return run_bench_command(cfg, out);
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
  return 2;
}

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  RunConfig cfg;
  try {
    cfg = parse_args(args);
  } catch (const HelpRequested& e) {
    std::cout << e.what();
    return 0;
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return 2;
  }
  return run(cfg, std::cout, std::cerr);
}

}  // namespace nlr::cli
