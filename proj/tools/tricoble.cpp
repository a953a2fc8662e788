// tricoble: construct, certify and iterate tri-Coble surfaces from a JSON
// configuration. Exit codes: 0 ok, 2 schema or usage, 3 validation or
// certification failure, 4 structural degeneracy.

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "tricoble/tricoble.hpp"

using namespace tricoble;

namespace {

enum Exit { kExitOk = 0, kExitSchema = 2, kExitInvalid = 3, kExitDegenerate = 4 };

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) out.push_back(cur);
  if (!s.empty() && s.back() == sep) out.emplace_back();
  return out;
}

Integer parse_int_arg(const std::string& s, const std::string& what) {
  Integer z;
  if (s.empty() || z.set_str(s, 10) != 0) throw SchemaError(what + ": '" + s + "' is not an integer");
  return z;
}

/// Accepts "p/q", decimals such as "0.001" and "1e-9".
Rational parse_rational_arg(const std::string& s) {
  const auto e = s.find_first_of("eE");
  std::string mant = s.substr(0, e);
  long exp10 = 0;
  if (e != std::string::npos) exp10 = parse_int_arg(s.substr(e + 1), "--eps exponent").get_si();
  Rational r;
  if (mant.find('/') != std::string::npos) {
    if (r.set_str(mant, 10) != 0 || r.get_den() == 0) throw SchemaError("--eps: '" + s + "' is not a number");
    r.canonicalize();
  } else {
    const auto dot = mant.find('.');
    if (dot != std::string::npos) {
      exp10 -= static_cast<long>(mant.size() - dot - 1);
      mant.erase(dot, 1);
    }
    r = Rational(parse_int_arg(mant, "--eps"));
  }
  Integer p;
  mpz_ui_pow_ui(p.get_mpz_t(), 10, static_cast<unsigned long>(exp10 < 0 ? -exp10 : exp10));
  if (exp10 < 0)
    r /= Rational(p);
  else
    r *= Rational(p);
  if (sgn(r) <= 0) throw SchemaError("--eps: must be positive");
  return r;
}

std::size_t label_index(const std::string& label) {
  for (std::size_t i = 0; i < 6; ++i)
    if (label == kPointLabels[i]) return i;
  throw SchemaError("unknown point label '" + label + "'");
}

/// Cubic from the config, or the LLL-selected member of the pencil.
IntVector chosen_cubic(const ConfigFile& cf) {
  if (cf.cubic) return *cf.cubic;
  return short_cubic(cubic_pencil(cf.config));
}

json prime_block(const PrimeScreen& s) {
  json j{{"prime", std::to_string(s.prime)}, {"good", s.good}};
  if (!s.good) j["reason"] = s.reason;
  if (s.report) j["certificate"] = to_json(*s.report);
  return j;
}

std::string first_failure_text(const CertReport& r) {
  const auto* bad = r.first_failure();
  std::string s = "condition (" + std::to_string(bad->index) + ") fails: " + bad->title;
  for (const auto& it : bad->items)
    if (!it.pass) return s + "; " + it.subject + " (" + it.witness + ")";
  return s;
}

struct Output {
  json report;
  int code = kExitOk;
  std::string message;  // printed to stderr when code != 0
};

// -------------------------------------------------------------------------

Output cmd_construct(const ConfigFile& cf) {
  Output out;
  json& r = out.report;
  r["input"] = config_to_json(cf);
  const auto val = validate_config(cf.config);
  json planes;
  for (std::size_t i = 0; i < 6; ++i) planes[kPointLabels[i]] = io::coords(val.tangent_planes[i].coords());
  r["validation"] = {{"pass", true}, {"tangent_planes", planes}};
  const auto sys = interpolation_system(cf.config);
  const std::size_t rk = rank(sys);
  r["interpolation"] = {{"rows", sys.rows()}, {"rank", rk}, {"kernel_dimension", sys.cols() - rk}};
  const auto pencil = cubic_pencil(cf.config);
  r["pencil"] = json::array({io::vector(pencil.basis[0]), io::vector(pencil.basis[1])});
  const auto cubic = short_cubic(pencil);
  r["cubic"] = io::vector(cubic);
  if (cf.cubic) {
    const Vec<Rational> a(pencil.basis[0].begin(), pencil.basis[0].end()), b(pencil.basis[1].begin(), pencil.basis[1].end());
    const Vec<Rational> c(cf.cubic->begin(), cf.cubic->end());
    r["pencil_contains_input_cubic"] = rank_of<Rational>({a, b, c}) == 2;
  }
  if (cf.prime) {
    const auto s = screen_prime(cf.config, cf.cubic ? *cf.cubic : cubic, *cf.prime);
    r["prime_screen"] = prime_block(s);
    if (!s.good) {
      out.code = kExitInvalid;
      out.message = "bad prime " + std::to_string(s.prime) + ": " + s.reason;
    }
  }
  return out;
}

Output cmd_certify(const ConfigFile& cf) {
  if (!cf.cubic) throw SchemaError("cubic: missing (certify needs a cubic)");
  Output out;
  json& r = out.report;
  r["input"] = config_to_json(cf);
  const auto f = cubic_from_vector(*cf.cubic);
  const auto rep = certify(cf.config, f);
  r["certificate"] = to_json(rep);
  bool t2_ok = true;
  json t2 = json::array();
  if (rep.tri_coble) {
    const BertiniTriple<Rational> triple(f, cf.config.points);
    for (const auto& c : t2_checks(triple, cf.config.points)) {
      json e{{"involution", std::string("tau_") + kPairLabels[c.pair]}, {"point", kPointLabels[c.point]}, {"fixed", c.fixed}};
      if (!c.error.empty()) e["error"] = c.error;
      t2_ok = t2_ok && c.fixed;
      t2.push_back(e);
    }
  }
  r["t2"] = t2;
  if (!rep.tri_coble) {
    out.code = kExitInvalid;
    out.message = first_failure_text(rep);
  } else if (!t2_ok) {
    out.code = kExitInvalid;
    out.message = "a Bertini involution moves one of the other pairs' points";
  }
  if (cf.prime) {
    const auto s = screen_prime(cf.config, *cf.cubic, *cf.prime);
    r["prime_screen"] = prime_block(s);
    if (!s.good && out.code == kExitOk) {
      out.code = kExitInvalid;
      out.message = "bad prime " + std::to_string(s.prime) + ": " + s.reason;
    }
  }
  return out;
}

Output cmd_dynamics(std::size_t pairs, const Rational& eps) {
  if (pairs < 1 || pairs > 16) throw SchemaError("--pairs: expected a value between 1 and 16");
  Output out;
  json& r = out.report;
  const auto phi = phi_pullback(pairs);
  r["pairs"] = pairs;
  r["rank"] = ns_rank(pairs);
  r["canonical_class"] = io::vector(canonical_class(ns_rank(pairs)));
  json blocks = json::array();
  for (std::size_t i = 1; i <= pairs; ++i) blocks.push_back(io::matrix(bertini_block(i, pairs).matrix()));
  r["bertini_blocks"] = blocks;
  r["phi"] = io::matrix(phi.matrix());
  const auto dd = dynamical_degree(phi, eps);
  r["dynamics"] = to_json(dd);
  r["eps"] = io::rational(eps);
  json fs = json::array();
  for (const auto& v : fixed_space(phi)) fs.push_back(io::vector(v));
  r["fixed_space"] = fs;
  return out;
}

ProjPoint<Rational> parse_seed(const std::string& seed, const HomogeneousForm<Rational>& f, const TangencyConfig<Rational>& cfg) {
  if (seed.rfind("chord:", 0) == 0) {
    const auto parts = split(seed.substr(6), ',');
    if (parts.size() != 2) throw SchemaError("--seed: expected chord:<label>,<label>");
    return third_intersection(f, cfg.points[label_index(parts[0])], cfg.points[label_index(parts[1])]);
  }
  const auto parts = split(seed, ',');
  if (parts.size() == 1) return cfg.points[label_index(parts[0])];
  if (parts.size() != 4) throw SchemaError("--seed: expected a label, chord:<a>,<b> or four integers");
  Vec<Rational> v;
  for (const auto& s : parts) v.emplace_back(parse_int_arg(s, "--seed"));
  if (is_zero_vector(v)) throw SchemaError("--seed: the zero vector is not a point");
  return ProjPoint<Rational>(v);
}

Output cmd_orbit(const ConfigFile& cf, const std::string& seed, std::size_t steps, std::size_t budget) {
  Output out;
  json& r = out.report;
  r["input"] = config_to_json(cf);
  const auto cubic = chosen_cubic(cf);
  const auto f = cubic_from_vector(cubic);
  const auto rep = certify(cf.config, f);
  if (!rep.tri_coble) throw ValidationError("configuration is not certified: " + first_failure_text(rep));
  const BertiniTriple<Rational> triple(f, cf.config.points);
  const auto z = parse_seed(seed, f, cf.config);
  if (!is_zero(f(z.coords()))) throw SchemaError("--seed: point is not on the cubic");
  const auto rec = orbit(triple, z, steps, budget);
  r["cubic"] = io::vector(cubic);
  r["seed_argument"] = seed;
  r["steps"] = steps;
  r["height_budget"] = budget;
  r["orbit"] = to_json(rec);
  if (!rec.error.empty()) {
    out.code = kExitDegenerate;
    out.message = rec.error;
  }
  return out;
}

Output cmd_ffexp(const ConfigFile& cf, std::optional<std::uint64_t> prime_flag, const std::string& map, const std::string& targets,
                 std::size_t bound) {
  const auto prime = prime_flag ? prime_flag : cf.prime;
  if (!prime) throw SchemaError("prime: missing (set it in the config or with --prime)");
  if (map.empty()) throw SchemaError("--map: empty word");
  for (char c : map)
    if (c != 'p' && c != 'q' && c != 'r') throw SchemaError(std::string("--map: unknown involution '") + c + "'");
  Output out;
  json& r = out.report;
  r["input"] = config_to_json(cf);
  const auto cubic = chosen_cubic(cf);
  const auto screen = screen_prime(cf.config, cubic, *prime);
  r["prime_screen"] = prime_block(screen);
  r["map"] = map;
  r["targets"] = targets;
  r["bound"] = bound;
  if (!screen.good) {
    out.code = kExitInvalid;
    out.message = "bad prime " + std::to_string(*prime) + ": " + screen.reason;
    return out;
  }
  const GF field(*prime);
  const auto cfg = reduce_mod(cf.config, field);
  const BertiniTriple<Fp> triple(reduce_mod(cubic_from_vector(cubic), field), cfg.points);
  std::vector<ProjPoint<Fp>> pts;
  for (const auto& t : split(targets, ',')) {
    if (t.find(':') == std::string::npos) {
      pts.push_back(cfg.points[label_index(t)]);
      continue;
    }
    const auto parts = split(t, ':');
    if (parts.size() != 4) throw SchemaError("--targets: expected labels or w:x:y:z points");
    Vec<Fp> v;
    for (const auto& s : parts) v.push_back(field(parse_int_arg(s, "--targets")));
    if (is_zero_vector(v)) throw SchemaError("--targets: the zero vector is not a point");
    pts.emplace_back(v);
    if (!is_zero(triple.ctx[0].cubic()(v))) throw SchemaError("--targets: " + t + " is not on the cubic modulo p");
  }
  if (pts.empty()) throw SchemaError("--targets: empty list");
  const auto fe = ff_fixing_exponent([&](const ProjPoint<Fp>& z) { return triple.apply(map, z); }, pts, bound);
  r["fixing_exponent"] = to_json(fe);
  return out;
}

void write_report(const json& body, const std::string& path) {
  json j = body;
  j["schema"] = kSchema;
  const std::string text = emit(j);
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw SchemaError("cannot write '" + path + "'");
  f << text;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Construct, certify and iterate tri-Coble surfaces"};
  app.require_subcommand(1);
  std::string output;
  app.add_option("-o,--output", output, "Write the report here instead of stdout");

  std::string config_path;
  auto* construct = app.add_subcommand("construct", "Validate the configuration and compute the cubic pencil");
  construct->add_option("config", config_path, "Configuration JSON")->required();
  construct->fallthrough();

  auto* certify_cmd = app.add_subcommand("certify", "Run the six-condition certificate and the fixed-point checks");
  certify_cmd->add_option("config", config_path, "Configuration JSON with a cubic")->required();
  certify_cmd->fallthrough();

  std::size_t pairs = 3;
  std::string eps_text = "1e-9";
  auto* dynamics = app.add_subcommand("dynamics", "Picard lattice action of the composed involutions");
  dynamics->add_option("--pairs", pairs, "Number of point pairs")->capture_default_str();
  dynamics->add_option("--eps", eps_text, "Width of the dynamical degree interval")->capture_default_str();
  dynamics->fallthrough();

  std::string seed = "chord:p1,q1";
  std::size_t steps = 3, height_budget = 10000000;
  auto* orbit_cmd = app.add_subcommand("orbit", "Iterate phi on a rational point");
  orbit_cmd->add_option("config", config_path, "Configuration JSON")->required();
  orbit_cmd->add_option("--seed", seed, "chord:<a>,<b>, a point label, or w,x,y,z")->capture_default_str();
  orbit_cmd->add_option("--steps", steps, "Number of applications of phi")->capture_default_str();
  orbit_cmd->add_option("--height-budget", height_budget, "Stop once a height exceeds this many digits")->capture_default_str();
  orbit_cmd->fallthrough();

  std::string map = "pq", targets = "r1,r2";
  std::size_t bound = 1000000;
  std::optional<std::uint64_t> prime;
  auto* ffexp = app.add_subcommand("ffexp", "Fixing exponent of a word in the involutions over a prime field");
  ffexp->add_option("config", config_path, "Configuration JSON")->required();
  ffexp->add_option("--map", map, "Word in p, q, r applied right to left")->capture_default_str();
  ffexp->add_option("--targets", targets, "Comma separated labels or w:x:y:z points")->capture_default_str();
  ffexp->add_option("--bound", bound, "Maximum cycle length")->capture_default_str();
  ffexp->add_option("--prime", prime, "Prime (overrides the config)");
  ffexp->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitSchema;
  }

  try {
    Output out;
    if (dynamics->parsed()) {
      out = cmd_dynamics(pairs, parse_rational_arg(eps_text));
    } else {
      const auto cf = load_config(config_path);
      if (construct->parsed()) out = cmd_construct(cf);
      if (certify_cmd->parsed()) out = cmd_certify(cf);
      if (orbit_cmd->parsed()) out = cmd_orbit(cf, seed, steps, height_budget);
      if (ffexp->parsed()) out = cmd_ffexp(cf, prime, map, targets, bound);
    }
    write_report(out.report, output);
    if (out.code != kExitOk) std::cerr << "error: " << out.message << "\n";
    return out.code;
  } catch (const SchemaError& e) {
    std::cerr << "schema error: " << e.what() << "\n";
    return kExitSchema;
  } catch (const ValidationError& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const DegenerateError& e) {
    std::cerr << "degenerate: " << e.what() << "\n";
    return kExitDegenerate;
  } catch (const BudgetExceeded& e) {
    std::cerr << "budget exceeded: " << e.what() << "\n";
    return kExitDegenerate;
  } catch (const DomainError& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return kExitSchema;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalid;
  }
}
