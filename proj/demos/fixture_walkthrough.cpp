// Walks the shipped fixture through the library: pencil, certificate,
// lattice dynamics, a short orbit and a prime-field fixing exponent.

#include <iostream>
#include <string>

#include "tricoble/json_io.hpp"
#include "tricoble/tricoble.hpp"

using namespace tricoble;

int main(int argc, char** argv) {
  const std::string path = argc > 1 ? argv[1] : std::string(TRICOBLE_DATA_DIR) + "/fixture.json";
  try {
    const auto cf = load_config(path);

    const auto pencil = cubic_pencil(cf.config);
    const auto cubic = short_cubic(pencil);
    std::cout << "short cubic:";
    for (const auto& c : cubic) std::cout << ' ' << c;
    std::cout << "\n";

    const auto f = cubic_from_vector(cubic);
    const auto rep = certify(cf.config, f);
    for (const auto& c : rep.conditions) std::cout << "  (" << c.index << ") " << (c.pass ? "ok  " : "FAIL") << ' ' << c.title << "\n";
    std::cout << "tri-Coble: " << std::boolalpha << rep.tri_coble << ", simple: " << rep.simple_tri_coble << "\n";

    const auto dd = dynamical_degree(phi_pullback(3), Rational(1, 1000000000));
    std::cout << "lambda1 = " << (dd.exact ? dd.exact->to_string() : "?") << " ~ " << to_decimal(dd.interval.lo, 9) << "\n";

    // Two steps keep this quick; the third has millions of digits.
    const BertiniTriple<Rational> triple(f, cf.config.points);
    const auto seed = third_intersection(f, cf.config.points[0], cf.config.points[2]);
    const auto rec = orbit(triple, seed, 2);
    for (std::size_t i = 0; i < rec.heights.size(); ++i)
      std::cout << "  height of phi^" << i << "(seed): " << decimal_digits(rec.heights[i]) << " digits\n";

    const std::uint64_t p = 59;
    const auto screen = screen_prime(cf.config, cubic, p);
    if (!screen.good) {
      std::cout << "prime " << p << " rejected: " << screen.reason << "\n";
      return 0;
    }
    const GF field(p);
    const auto red = reduce_mod(cf.config, field);
    const BertiniTriple<Fp> ff(reduce_mod(f, field), red.points);
    auto pq = [&](const ProjPoint<Fp>& z) { return ff.apply("pq", z); };
    // Keep sample points whose whole cycle avoids the degenerate locus.
    std::vector<ProjPoint<Fp>> targets;
    for (long z = 0; z < static_cast<long>(p) && targets.size() < 3; ++z)
      for (long y = 0; y < static_cast<long>(p) && targets.size() < 3; ++y) {
        const Vec<Fp> v{field.one(), field(3), field(y), field(z)};
        if (!is_zero(ff.ctx[0].cubic()(v))) continue;
        try {
          ff_fixing_exponent(pq, std::vector<ProjPoint<Fp>>{ProjPoint<Fp>(v)}, 100000);
          targets.emplace_back(v);
        } catch (const Error&) {
        }
      }
    const auto fe = ff_fixing_exponent(pq, targets, 100000);
    std::cout << "over F_" << p << ", (tau_p tau_q)^m fixes " << targets.size() << " sample points for m = " << fe.m << "\n";
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
