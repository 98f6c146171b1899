#include "commands.hpp"

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include <CLI11.hpp>

#include "fdet/circle.hpp"
#include "fdet/errors.hpp"
#include "fdet/ideal.hpp"
#include "fdet/normalizer.hpp"
#include "fdet/parse.hpp"
#include "fdet/serialize.hpp"

namespace fdet::cli {

namespace {

constexpr int kOk = 0;
constexpr int kError = 1;
constexpr int kInconclusive = 2;

// An argument naming an existing file is read from it.
std::string read_input(const std::string& arg) {
  std::error_code ec;
  if (!std::filesystem::is_regular_file(arg, ec)) return arg;
  std::ifstream in(arg);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void emit(const json& j, const std::string& path, std::ostream& out) {
  const std::string text = j.dump(2) + "\n";
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error("cannot write " + path);
  f << text;
}

std::vector<Jet> parse_generators(const std::string& text, std::size_t n, unsigned trunc) {
  std::vector<Jet> gens;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) gens.push_back(parse_jet(item, n, trunc));
  if (gens.empty()) throw ParseError("empty ideal");
  return gens;
}

Jet random_small_perturbation(std::size_t n, unsigned trunc, unsigned min_order, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> num(-4, 4);
  Jet g(n, trunc);
  const MonomialIndex mons(n, trunc);
  for (const Exponent& e : mons.monomials())
    if (total_degree(e) >= min_order) g.add_term(e, QComplex(Rational(num(rng), 256)));
  return g;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Finite determinacy of holomorphic germs: Milnor numbers, normal forms, certificates"};
  app.require_subcommand(1);

  unsigned trunc = 12;
  std::size_t nvars = 0;
  std::size_t grid = 10;
  double scale = 0.5;
  std::uint64_t seed = 20240601;
  std::string out_path;

  std::string f_text, g_text = "0", mode_text = "jacobian", ideal_text, cert_path;
  std::optional<double> m_opt;
  unsigned k_circle = 2;
  std::optional<unsigned> band;
  std::size_t count = 20;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--trunc", trunc, "Truncation degree (>= 2)")->check(CLI::Range(2u, 64u));
    sub->add_option("--out", out_path, "Write JSON here instead of stdout");
  };

  CLI::App* milnor = app.add_subcommand("milnor", "Milnor number and determinacy exponent");
  milnor->add_option("f", f_text, "Germ, inline or a file")->required();
  milnor->add_option("--nvars", nvars, "Number of variables (default: inferred)");
  common(milnor);

  CLI::App* normalize_cmd = app.add_subcommand("normalize", "Find phi with f o phi = f + g");
  normalize_cmd->add_option("f", f_text, "Germ, inline or a file")->required();
  normalize_cmd->add_option("g", g_text, "Perturbation, inline or a file")->required();
  normalize_cmd->add_option("--nvars", nvars, "Number of variables (default: inferred)");
  normalize_cmd->add_option("--mode", mode_text, "jacobian or ideal")->check(CLI::IsMember({"jacobian", "ideal"}));
  normalize_cmd->add_option("--ideal", ideal_text, "Comma-separated generators (ideal mode)");
  normalize_cmd->add_option("--grid", grid, "Number of grid radii in ]0,S[")->check(CLI::PositiveNumber);
  normalize_cmd->add_option("--scale", scale, "S")->check(CLI::PositiveNumber);
  normalize_cmd->add_option("--m", m_opt, "Schedule constant (default: sampled estimate)");
  common(normalize_cmd);

  CLI::App* circle = app.add_subcommand("circle", "Normalize r^k + r^{k+1} g along the circle");
  circle->add_option("k", k_circle, "Exponent k >= 1")->required()->check(CLI::Range(1u, 64u));
  circle->add_option("g", g_text, "g in r and e(n), inline or a file")->required();
  circle->add_option("--band", band, "Working Fourier band");
  common(circle);

  CLI::App* verify = app.add_subcommand("verify", "Re-check a certificate file");
  verify->add_option("path", cert_path, "Certificate JSON")->required();

  CLI::App* bench = app.add_subcommand("bench", "Time random Morse normalizations");
  bench->add_option("--seed", seed, "RNG seed");
  bench->add_option("--count", count, "Number of cases");
  bench->add_option("--nvars", nvars, "Number of variables (default 2)");
  common(bench);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kError;
  }

  try {
    if (*milnor) {
      const Jet f = parse_jet(read_input(f_text), nvars, trunc);
      const MilnorAnalysis a = analyze_milnor(f);
      emit(to_json(a), out_path, out);
      return a.milnor ? kOk : kInconclusive;
    }
    if (*normalize_cmd) {
      const std::string ft = read_input(f_text), gt = read_input(g_text);
      const std::size_t n = nvars ? nvars : std::max(count_variables(ft), count_variables(gt));
      const Jet f = parse_jet(ft, n, trunc);
      const Jet g = parse_jet(gt, n, trunc);
      NormalizeOptions opt;
      opt.mode = parse_mode(mode_text);
      if (opt.mode == Mode::ideal) {
        if (ideal_text.empty()) throw ParseError("ideal mode needs --ideal");
        opt.ideal = IdealData(parse_generators(read_input(ideal_text), n, trunc), trunc);
      }
      opt.scale = ScaleParams::uniform(scale, grid);
      opt.m = m_opt;
      const Certificate cert = normalize(f, g, opt);
      const VerifyReport rep = verify_certificate_report(cert);
      emit(to_json(cert), out_path, out);
      if (!rep.ok) {
        err << "verification failed: " << rep.reason << "\n";
        return kError;
      }
      if (!cert.ok) {
        err << "right inverse failed; residual is nonzero\n";
        return kError;
      }
      return kOk;
    }
    if (*circle) {
      const FourierJet g = parse_fourier(read_input(g_text), trunc, band.value_or(8));
      const CircleResult r = circle_normalize(k_circle, g, trunc, band);
      emit(to_json(r), out_path, out);
      return r.ok ? kOk : kError;
    }
    if (*verify) {
      std::ifstream in(cert_path);
      if (!in) {
        err << "cannot read " << cert_path << "\n";
        return kError;
      }
      json j;
      try {
        j = json::parse(in);
      } catch (const json::parse_error& e) {
        err << "parse error: " << e.what() << "\n";
        return kError;
      }
      const Certificate cert = certificate_from_json(j);
      const VerifyReport rep = verify_certificate_report(cert);
      out << (rep.ok ? "valid" : "invalid: " + rep.reason) << "\n";
      return rep.ok ? kOk : kError;
    }
    if (*bench) {
      const std::size_t n = nvars ? nvars : 2;
      std::mt19937_64 rng(seed);
      Jet f(n, trunc);
      for (std::size_t i = 0; i < n; ++i) f += jet_pow(Jet::variable(n, trunc, i), 2);
      json runs = json::array();
      for (std::size_t c = 0; c < count; ++c) {
        const Jet g = random_small_perturbation(n, trunc, 3, rng);
        const auto t0 = std::chrono::steady_clock::now();
        const Certificate cert = normalize(f, g);
        const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
        runs.push_back({{"case", c}, {"steps", cert.steps.size()}, {"ok", cert.ok}, {"ms", ms}});
      }
      emit({{"n_vars", n}, {"trunc", trunc}, {"seed", seed}, {"runs", runs}}, out_path, out);
      return kOk;
    }
  } catch (const PreconditionError& e) {
    err << "precondition failed: " << e.what() << "\n";
    return kInconclusive;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kError;
  }
  return kError;
}

}  // namespace fdet::cli
