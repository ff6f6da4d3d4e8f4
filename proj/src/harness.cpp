#include "smsec/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <fstream>
#include <mutex>
#include <stdexcept>
#include <thread>

namespace smsec {
namespace {

struct PointResult {
  bool feasible = false;
  double sr = 0.0;
  double sjnr = 0.0;
  BerResult ber;
};

std::string snr_tag(double snr) { return format_double(snr); }

void write_file(const std::filesystem::path& path, const std::string& body) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
  out << body;
  out.flush();
  if (!out) throw std::runtime_error("failed writing '" + path.string() + "'");
}

}  // namespace

const char* version_string() {
#ifdef SMSEC_VERSION
  return SMSEC_VERSION;
#else
  return "unknown";
#endif
}

double noise_variance_for_snr(double power, double snr_db) {
  return power / std::pow(10.0, snr_db / 10.0);
}

std::vector<MetricsRecord> run_sweep(const SystemConfig& cfg, const SweepSpec& sweep, int threads) {
  cfg.validate();
  sweep.validate();
  const TxCodebook codebook = build_codebook(cfg.n_active, cfg.order);

  const std::size_t n_pm = sweep.p_m_list.size();
  const std::size_t n_snr = sweep.snr_grid_db.size();
  const std::size_t n_meth = sweep.methods.size();
  const std::size_t n_real = static_cast<std::size_t>(sweep.n_channel_realizations);
  const auto n_ber = static_cast<std::uint64_t>(sweep.n_ber_trials);

  // results[((p * n_snr + s) * n_meth + m) * n_real + r]
  std::vector<PointResult> results(n_pm * n_snr * n_meth * n_real);
  auto slot = [&](std::size_t p, std::size_t s, std::size_t m, std::size_t r) -> PointResult& {
    return results[((p * n_snr + s) * n_meth + m) * n_real + r];
  };

  auto run_realization = [&](std::size_t r) {
    Rng channel_rng = Rng::derive(cfg.seed, {stream::kChannel, r});
    const ChannelSet cs = draw_channel_set(cfg, sweep.an_mode, channel_rng);
    const std::uint64_t ber_share = n_ber / n_real + (r < n_ber % n_real ? 1 : 0);

    for (std::size_t p = 0; p < n_pm; ++p) {
      for (std::size_t s = 0; s < n_snr; ++s) {
        SystemConfig point = cfg;
        point.mallory_power = sweep.p_m_list[p];
        point.sigma_b2 = point.sigma_e2 = noise_variance_for_snr(cfg.power, sweep.snr_grid_db[s]);

        Rng eve_rng = Rng::derive(cfg.seed, {stream::kMutualInfoEve, r, s, p});
        const double ie =
            mutual_info_mc(cs.u_er, Side::Mallory, cs, point, codebook, sweep.n_noise, eve_rng);

        for (std::size_t m = 0; m < n_meth; ++m) {
          PointResult& out = slot(p, s, m, r);
          Beamformer bf;
          try {
            bf = design(sweep.methods[m], cs, point);
          } catch (const ZfcInfeasible&) {
            continue;
          }
          out.feasible = true;
          Rng bob_rng = Rng::derive(cfg.seed, {stream::kMutualInfoBob, r, s, p});
          const double ib =
              mutual_info_mc(bf.u_br, Side::Bob, cs, point, codebook, sweep.n_noise, bob_rng);
          out.sr = std::max(0.0, ib - ie);
          out.sjnr = sjnr(bf.u_br, cs, point);
          if (ber_share > 0) {
            Rng ber_rng = Rng::derive(cfg.seed, {stream::kBer, r, s, p});
            out.ber = ber_trials(bf, cs, point, codebook, ber_share, ber_rng);
          }
        }
      }
    }
  };

  const std::size_t workers =
      std::clamp<std::size_t>(threads < 1 ? 1 : static_cast<std::size_t>(threads), 1, n_real);
  if (workers == 1) {
    for (std::size_t r = 0; r < n_real; ++r) run_realization(r);
  } else {
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t r; (r = next.fetch_add(1)) < n_real;) {
          try {
            run_realization(r);
          } catch (...) {
            std::lock_guard lock(failure_mutex);
            if (!failure) failure = std::current_exception();
            next = n_real;
          }
        }
      });
    }
    for (auto& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);
  }

  std::vector<MetricsRecord> records;
  records.reserve(n_pm * n_snr * n_meth);
  for (std::size_t p = 0; p < n_pm; ++p) {
    for (std::size_t s = 0; s < n_snr; ++s) {
      for (std::size_t m = 0; m < n_meth; ++m) {
        MetricsRecord rec;
        rec.method = sweep.methods[m];
        rec.snr_db = sweep.snr_grid_db[s];
        rec.p_m = sweep.p_m_list[p];
        double sjnr_sum = 0.0;
        BerResult ber_total;
        for (std::size_t r = 0; r < n_real; ++r) {
          const PointResult& pr = slot(p, s, m, r);
          if (!pr.feasible) {
            ++rec.n_zfc_infeasible;
            continue;
          }
          rec.sr_samples.push_back(pr.sr);
          sjnr_sum += pr.sjnr;
          ber_total += pr.ber;
        }
        rec.n_realizations = rec.sr_samples.size();
        if (rec.n_realizations > 0) {
          const double n = static_cast<double>(rec.n_realizations);
          double sum = 0.0;
          for (double x : rec.sr_samples) sum += x;
          rec.avg_sr = sum / n;
          double ss = 0.0;
          for (double x : rec.sr_samples) ss += (x - rec.avg_sr) * (x - rec.avg_sr);
          rec.sr_stderr = rec.n_realizations > 1 ? std::sqrt(ss / (n - 1.0) / n) : 0.0;
          rec.avg_sjnr_db = 10.0 * std::log10(sjnr_sum / n);
        }
        rec.ber = ber_total.ber();
        rec.n_ber_trials = ber_total.trials;
        rec.n_bit_errors = ber_total.bit_errors;
        records.push_back(std::move(rec));
      }
    }
  }
  return records;
}

void write_outputs(const std::vector<MetricsRecord>& records, const ExperimentConfig& cfg,
                   const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec || !std::filesystem::is_directory(dir))
    throw std::runtime_error("cannot create output directory '" + dir.string() + "'" +
                             (ec ? ": " + ec.message() : std::string()));

  std::string csv = std::string(kResultsHeader) + "\n";
  for (const auto& r : records) {
    csv += std::string(to_string(r.method)) + "," + format_double(r.snr_db) + "," +
           format_double(r.p_m) + "," + format_double(r.avg_sr) + "," + format_double(r.ber) +
           "," + format_double(r.avg_sjnr_db) + "," + std::to_string(r.n_realizations) + "," +
           std::to_string(r.n_zfc_infeasible) + "\n";
  }
  write_file(dir / "results.csv", csv);

  const auto& sweep = cfg.sweep;
  const bool multi_pm = sweep.p_m_list.size() > 1;
  for (double snr : sweep.snr_grid_db) {
    for (double pm : sweep.p_m_list) {
      std::string body = "method,sr,cdf\n";
      for (Method m : sweep.methods) {
        for (const auto& r : records) {
          if (r.method != m || r.snr_db != snr || r.p_m != pm) continue;
          for (const auto& [x, f] : empirical_cdf(r.sr_samples))
            body += std::string(to_string(m)) + "," + format_double(x) + "," + format_double(f) + "\n";
        }
      }
      std::string name = "sr_cdf_" + snr_tag(snr);
      if (multi_pm) name += "_pm" + format_double(pm);
      write_file(dir / (name + ".csv"), body);
    }
  }

  write_file(dir / "manifest.txt", "# smsec simulate manifest\n# version " +
                                       std::string(version_string()) + "\n" + emit_config(cfg));
}

}  // namespace smsec
