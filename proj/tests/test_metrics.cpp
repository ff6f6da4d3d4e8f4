#include <cmath>

#include "doctest.h"
#include "oracles.hpp"
#include "smsec/metrics.hpp"

using namespace smsec;

namespace {

ChannelSet channel(const SystemConfig& cfg, std::uint64_t r, AnMode mode = AnMode::NullSpace) {
  Rng rng = Rng::derive(cfg.seed + 200, {stream::kChannel, r});
  return draw_channel_set(cfg, mode, rng);
}

// One-antenna real-gain link for the BPSK quadrature comparison.
ChannelSet scalar_link(double gain) {
  ChannelSet cs;
  cs.h = CMatrix::Constant(1, 1, gain);
  cs.g = CMatrix::Zero(2, 1);
  cs.f = CMatrix::Zero(1, 2);
  cs.mself = CMatrix::Identity(2, 2);
  cs.t = RMatrix::Identity(1, 1);
  cs.selected = {0};
  cs.p_an = CMatrix::Zero(1, 1);
  cs.u_er = CVector::Unit(2, 0);
  cs.p_jm = CVector::Unit(2, 1);
  return cs;
}

}  // namespace

TEST_CASE("noise_cov_bob closed cases") {
  SystemConfig cfg;
  cfg.sigma_b2 = 0.3;
  const auto cs = channel(cfg, 0);
  {
    auto c = cfg;
    c.beta = 1.0;
    c.mallory_power = 0.0;
    CHECK((noise_cov_bob(cs, c) - 0.3 * CMatrix::Identity(6, 6)).cwiseAbs().maxCoeff() <= 1e-15);
  }
  const CMatrix jam = cs.f * cs.p_jm;
  const CMatrix expect = cfg.mallory_power * cfg.sigma_m2 * jam * jam.adjoint() + 0.3 * CMatrix::Identity(6, 6);
  CHECK((noise_cov_bob(cs, cfg) - expect).cwiseAbs().maxCoeff() <= 1e-12);
}

TEST_CASE("noise_cov_bob matches the empirical covariance of w") {
  SystemConfig cfg;
  cfg.sigma_b2 = 0.5;
  const auto cs = channel(cfg, 1, AnMode::Random);  // AN reaches Bob too
  const auto cb = build_codebook(cfg.n_active, cfg.order);
  const CVector signal = std::sqrt(cfg.beta * cfg.power) * cs.ht() * cb.vector(3);
  Rng rng(51);
  const int draws = 100000;
  CMatrix emp = CMatrix::Zero(6, 6);
  for (int i = 0; i < draws; ++i) {
    const CVector w = receive(cb[3], cs, cfg, rng).y_b - signal;
    emp += w * w.adjoint();
  }
  emp /= draws;
  const CMatrix rw = noise_cov_bob(cs, cfg);
  CHECK((emp - rw).norm() <= 0.03 * rw.norm());
}

TEST_CASE("scalar_inpn_cov") {
  SystemConfig cfg;
  cfg.sigma_b2 = 0.4;
  cfg.sigma_e2 = 0.9;
  const auto cs = channel(cfg, 2, AnMode::Random);
  Rng rng(52);
  const CVector u = oracle::random_unit_vector(6, rng);

  auto quiet = cfg;
  quiet.beta = 1.0;
  quiet.mallory_power = 0.0;
  CHECK(scalar_inpn_cov(u, cs, quiet, Side::Bob) == doctest::Approx(0.4).epsilon(1e-14));

  const double bob = scalar_inpn_cov(u, cs, cfg, Side::Bob);
  CHECK(std::abs(bob - u.dot(noise_cov_bob(cs, cfg) * u).real()) <= 1e-12);

  // Mallory: the self-interference term is nulled, leaving AN + noise
  const CVector an = (cs.u_er.adjoint() * cs.gt() * cs.p_an).transpose();
  const double expect = (1 - cfg.beta) * cfg.power * cfg.sigma_a2 * an.squaredNorm() + cfg.sigma_e2;
  CHECK(scalar_inpn_cov(cs.u_er, cs, cfg, Side::Mallory) == doctest::Approx(expect).epsilon(1e-12));
  CHECK(scalar_inpn_cov(cs.u_er, cs, cfg, Side::Mallory) >= cfg.sigma_e2);

  // and it matches the empirical power of Mallory's combined interference
  const auto cb = build_codebook(cfg.n_active, cfg.order);
  const Complex sig = std::sqrt(cfg.beta * cfg.power) * cs.u_er.dot(cs.gt() * cb.vector(0));
  double acc = 0;
  const int draws = 50000;
  for (int i = 0; i < draws; ++i) acc += std::norm(cs.u_er.dot(receive(cb[0], cs, cfg, rng).y_e) - sig);
  CHECK(acc / draws == doctest::Approx(expect).epsilon(0.03));
}

TEST_CASE("sjnr closed cases") {
  SystemConfig cfg;
  const auto cs = channel(cfg, 3);
  Rng rng(53);
  const CVector u = oracle::random_unit_vector(6, rng);
  auto silent = cfg;
  silent.beta = 0.0;
  CHECK(sjnr(u, cs, silent) == 0.0);

  auto white = cfg;
  white.mallory_power = 0.0;
  white.sigma_b2 = 2.0;
  const double quad = (cs.ht().adjoint() * u).squaredNorm();
  CHECK(sjnr(u, cs, white) == doctest::Approx(cfg.beta * cfg.power / (8 * 2.0) * quad).epsilon(1e-13));
  CHECK(sjnr(u, cs, cfg) > 0.0);
}

TEST_CASE("discrete_input_mi matches BPSK quadrature") {
  for (double snr_db : {-5.0, 0.0, 5.0, 10.0}) {
    const double snr = std::pow(10.0, snr_db / 10.0);
    const double exact = oracle::bpsk_mi_quadrature(snr);
    const Complex pts[] = {std::sqrt(snr), -std::sqrt(snr)};
    Rng rng(54);
    CHECK(std::abs(discrete_input_mi(pts, 20000, rng) - exact) <= 0.02);
  }
}

TEST_CASE("mutual_info_mc on a one-antenna BPSK link matches quadrature") {
  SystemConfig cfg;
  cfg.n_tx = cfg.n_active = cfg.n_bob = 1;
  cfg.n_mallory = 2;
  cfg.order = 2;
  cfg.beta = 1.0;
  cfg.mallory_power = 0.0;
  cfg.sigma_b2 = 1.0;
  const auto cb = build_codebook(1, 2);
  const CVector u = CVector::Ones(1);
  for (double snr_db : {-5.0, 0.0, 5.0, 10.0}) {
    cfg.power = std::pow(10.0, snr_db / 10.0);
    const auto cs = scalar_link(1.0);
    Rng rng(55);
    const double mc = mutual_info_mc(u, Side::Bob, cs, cfg, cb, 20000, rng);
    CHECK(std::abs(mc - oracle::bpsk_mi_quadrature(cfg.power)) <= 0.02);
  }
}

TEST_CASE("mutual_info_mc limits and bounds") {
  SystemConfig cfg;
  const auto cb = build_codebook(cfg.n_active, cfg.order);

  SUBCASE("noiseless, interference-free link approaches log2(N_t M)") {
    auto c = cfg;
    c.beta = 1.0;
    c.mallory_power = 0.0;
    c.sigma_b2 = 1e-5;  // 60 dB
    const auto cs = channel(c, 4);
    const auto bf = max_rp(cs, c);
    Rng rng(56);
    CHECK(mutual_info_mc(bf.u_br, Side::Bob, cs, c, cb, 1000, rng) >= 5.0 - 0.05);
  }
  SUBCASE("no signal power gives zero") {
    auto c = cfg;
    c.beta = 0.0;
    const auto cs = channel(c, 5);
    Rng rng(57);
    CHECK(mutual_info_mc(cs.u_er, Side::Mallory, cs, c, cb, 100, rng) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(mutual_info_mc(max_rp(cs, c).u_br, Side::Bob, cs, c, cb, 100, rng) ==
          doctest::Approx(0.0).epsilon(1e-12));
  }
  SUBCASE("bounds across SNR") {
    for (double s2 : {100.0, 1.0, 0.01, 1e-4}) {
      auto c = cfg;
      c.sigma_b2 = c.sigma_e2 = s2;
      const auto cs = channel(c, 6);
      Rng rng(58);
      for (Method m : kAllMethods) {
        const double i = mutual_info_mc(design(m, cs, c).u_br, Side::Bob, cs, c, cb, 50, rng);
        CHECK(i >= 0.0);
        CHECK(i <= 5.0);
      }
    }
  }
  SUBCASE("n_noise must be positive") {
    const auto cs = channel(cfg, 7);
    Rng rng(59);
    CHECK_THROWS_AS(mutual_info_mc(cs.u_er, Side::Mallory, cs, cfg, cb, 0, rng), std::invalid_argument);
  }
}

TEST_CASE("mutual_info_mc is invariant to combiner scale") {
  SystemConfig cfg;
  const auto cb = build_codebook(cfg.n_active, cfg.order);
  const auto cs = channel(cfg, 8);
  const CVector u = max_sjnr(cs, cfg).u_br;
  for (double scale : {0.01, 3.0, 250.0}) {
    Rng a(60), b(60);
    const double i0 = mutual_info_mc(u, Side::Bob, cs, cfg, cb, 200, a);
    const double i1 = mutual_info_mc(CVector(scale * u), Side::Bob, cs, cfg, cb, 200, b);
    CHECK(std::abs(i0 - i1) <= 1e-9);
  }
}

TEST_CASE("halving n_noise moves the MI estimate by less than 0.03 bits") {
  SystemConfig cfg;
  const auto cb = build_codebook(cfg.n_active, cfg.order);
  for (double snr_db : {-5.0, 5.0}) {
    auto c = cfg;
    c.sigma_b2 = c.sigma_e2 = c.power / std::pow(10.0, snr_db / 10.0);
    for (std::uint64_t r = 0; r < 5; ++r) {
      const auto cs = channel(c, 10 + r);
      const CVector u = max_sjnr(cs, c).u_br;
      Rng a(61 + r), b(71 + r);
      const double full = mutual_info_mc(u, Side::Bob, cs, c, cb, 500, a);
      const double half = mutual_info_mc(u, Side::Bob, cs, c, cb, 250, b);
      CHECK(std::abs(full - half) < 0.03);
    }
  }
}

TEST_CASE("secrecy_rate") {
  SystemConfig cfg;
  const auto cb = build_codebook(cfg.n_active, cfg.order);

  SUBCASE("symmetric eavesdropper gives (almost) nothing") {
    auto c = cfg;
    c.n_mallory = c.n_bob;
    c.mallory_power = 0.0;
    auto cs = channel(c, 20);
    cs.g = cs.h;
    const auto bf = max_rp(cs, c);
    cs.u_er = bf.u_br;
    Rng rng(62);
    CHECK(secrecy_rate(bf, cs, c, cb, 2000, rng) <= 0.03);
  }
  SUBCASE("deaf eavesdropper leaves Bob's rate") {
    auto c = cfg;
    c.sigma_e2 = 1e12;
    const auto cs = channel(c, 21);
    const auto bf = max_sjnr(cs, c);
    Rng a(63), b(64);
    const double ib = mutual_info_mc(bf.u_br, Side::Bob, cs, c, cb, 1000, a);
    CHECK(std::abs(secrecy_rate(bf, cs, c, cb, 1000, b) - ib) <= 0.03);
  }
  SUBCASE("never negative") {
    for (std::uint64_t r = 0; r < 20; ++r) {
      auto c = cfg;
      c.sigma_b2 = c.sigma_e2 = r % 2 ? 10.0 : 0.1;
      const auto cs = channel(c, 30 + r);
      Rng rng(65 + r);
      CHECK(secrecy_rate(max_rp(cs, c), cs, c, cb, 50, rng) >= 0.0);
    }
  }
}

TEST_CASE("ml_detect") {
  SystemConfig cfg;
  const auto cb = build_codebook(cfg.n_active, cfg.order);

  SUBCASE("noiseless link recovers every codebook entry") {
    auto c = cfg;
    c.beta = 1.0;
    c.mallory_power = 0.0;
    c.sigma_b2 = c.sigma_e2 = 0.0;
    const auto cs = channel(c, 40);
    const auto bf = max_rp(cs, c);
    Rng rng(66);
    for (const auto& e : cb) CHECK(ml_detect(receive(e, cs, c, rng).y_b, bf, cs, c, cb) == e.label);
  }
  SUBCASE("joint scaling of observation and reference keeps the decision") {
    const auto cs = channel(cfg, 41);
    const auto bf = max_wfrp(cs, cfg);
    Rng rng(67);
    for (int i = 0; i < 200; ++i) {
      const auto rx = receive(cb[rng.index(cb.size())], cs, cfg, rng);
      auto scaled = cs;
      scaled.h *= 2.5;
      auto c = cfg;
      c.sigma_b2 *= 2.5 * 2.5;
      c.mallory_power *= 2.5 * 2.5;
      CHECK(ml_detect(rx.y_b, bf, cs, cfg, cb) == ml_detect(CVector(2.5 * rx.y_b), bf, scaled, c, cb));
    }
  }
  SUBCASE("very low SNR approaches uniform guessing") {
    auto c = cfg;
    c.sigma_b2 = c.sigma_e2 = c.power * 1e6;  // -60 dB
    Rng crng = Rng::derive(3, {stream::kChannel, 0});
    const auto cs = draw_channel_set(c, AnMode::NullSpace, crng);
    const auto bf = max_rp(cs, c);
    const MlDetector det(bf, cs, c, cb);
    Rng rng(68);
    int errors = 0;
    const int trials = 100000;
    for (int i = 0; i < trials; ++i) {
      const auto& e = cb[rng.index(cb.size())];
      errors += det.detect(receive(e, cs, c, rng).y_b) != e.label;
    }
    CHECK(std::abs(static_cast<double>(errors) / trials - 31.0 / 32.0) <= 0.02);
  }
}

TEST_CASE("ber") {
  SystemConfig cfg;
  const auto cb = build_codebook(cfg.n_active, cfg.order);
  std::vector<ChannelSet> stream;
  for (std::uint64_t r = 0; r < 100; ++r) stream.push_back(channel(cfg, 100 + r));

  SUBCASE("noiseless is error free") {
    auto c = cfg;
    c.beta = 1.0;
    c.mallory_power = 0.0;
    c.sigma_b2 = c.sigma_e2 = 0.0;
    Rng rng(69);
    for (Method m : {Method::MaxRP, Method::MaxRPZFC}) {
      const auto res = ber(m, stream, c, cb, 5000, rng);
      CHECK(res.bit_errors == 0);
      CHECK(res.bits == 5000 * 5);
      CHECK(res.ber() == 0.0);
    }
  }
  SUBCASE("argument checks") {
    Rng rng(70);
    CHECK_THROWS_AS(ber(Method::MaxRP, stream, cfg, cb, 0, rng), std::invalid_argument);
    CHECK_THROWS_AS(ber(Method::MaxRP, std::span<const ChannelSet>{}, cfg, cb, 10, rng), std::invalid_argument);
  }
  SUBCASE("non-increasing in SNR") {
    for (Method m : kAllMethods) {
      double prev = 1.0, prev_sigma = 0.0;
      for (double snr_db : {-5.0, 0.0, 5.0, 10.0}) {
        auto c = cfg;
        c.sigma_b2 = c.sigma_e2 = c.power / std::pow(10.0, snr_db / 10.0);
        Rng rng(71);
        const auto res = ber(m, stream, c, cb, 20000, rng);
        const double p = res.ber();
        const double sigma = std::sqrt(p * (1 - p) / static_cast<double>(res.trials));
        CHECK(p <= prev + 2 * std::hypot(sigma, prev_sigma));
        prev = p;
        prev_sigma = sigma;
      }
    }
  }
  SUBCASE("infeasible channels are counted, not fatal") {
    auto c = cfg;
    c.n_bob = 3;
    std::vector<ChannelSet> small;
    for (std::uint64_t r = 0; r < 4; ++r) small.push_back(channel(c, r));
    Rng rng(72);
    const auto res = ber(Method::MaxRPZFC, small, c, cb, 100, rng);
    CHECK(res.infeasible_channels == 4);
    CHECK(res.trials == 0);
  }
}

TEST_CASE("flop_estimate") {
  CHECK(flop_estimate(Method::MaxRP, 6) == 27864.0);
  CHECK(flop_estimate(Method::MaxSJNR, 6) == 57906.0);
  CHECK(flop_estimate(Method::MaxWFRP, 6) == 266.0 * 216 + 18);
  CHECK(flop_estimate(Method::MaxRPZFC, 6) == 259.0 * 216);
  for (int n = 1; n <= 200; ++n) {
    CHECK(flop_estimate(Method::MaxRP, n) < flop_estimate(Method::MaxRPZFC, n));
    CHECK(flop_estimate(Method::MaxRPZFC, n) < flop_estimate(Method::MaxWFRP, n));
    CHECK(flop_estimate(Method::MaxWFRP, n) < flop_estimate(Method::MaxSJNR, n));
  }
}

TEST_CASE("empirical_cdf") {
  const auto cdf = empirical_cdf({0.5, 0.0, 2.0, 0.5});
  REQUIRE(cdf.size() == 4);
  CHECK(cdf.front().first == 0.0);
  CHECK(cdf.back().first == 2.0);
  CHECK(cdf.back().second == 1.0);
  for (std::size_t i = 1; i < cdf.size(); ++i) {
    CHECK(cdf[i].first >= cdf[i - 1].first);
    CHECK(cdf[i].second > cdf[i - 1].second);
  }
  CHECK(empirical_cdf({}).empty());
}
