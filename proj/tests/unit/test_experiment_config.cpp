#include "doctest.h"
#include "ddaqc/config.hpp"

#include <sstream>

using namespace ddaqc;

namespace {

ExperimentConfig small_config() {
  ExperimentConfig c;
  c.t_grid = {2.0, 5.0};
  c.realizations = 4;
  c.sequences = {SequenceSpec::cdd(1), SequenceSpec::qdd(1, 1)};
  c.workers = 1;
  return c;
}

}  // namespace

TEST_CASE("distance curve row layout") {
  const auto rec = distance_curve(small_config());
  REQUIRE(rec.size() == 8);
  CHECK(rec[0].sequence == "ideal");
  CHECK(rec[0].realizations == 1);
  CHECK(rec[1].sequence == "faulty");
  CHECK(rec[2].sequence == "CDD");
  CHECK(rec[2].level_or_order == "1");
  CHECK(rec[3].sequence == "QDD");
  CHECK(rec[4].t_over_invgap == 5.0);
  for (const auto& r : rec) {
    CHECK(r.d_mean >= 0.0);
    CHECK(r.d_mean <= 1.0);
    CHECK(r.d_stderr >= 0.0);
  }
}

TEST_CASE("results do not depend on the worker count") {
  auto c = small_config();
  const auto serial = distance_curve(c);
  c.workers = 3;
  const auto parallel = distance_curve(c);
  REQUIRE(serial.size() == parallel.size());
  for (std::size_t k = 0; k < serial.size(); ++k) {
    CHECK(serial[k].d_mean == parallel[k].d_mean);
    CHECK(serial[k].d_stderr == parallel[k].d_stderr);
  }
}

TEST_CASE("D_mean is the distance of the ensemble state; the error bar is the standard error") {
  auto c = small_config();
  c.include_ideal = false;
  c.t_grid = {3.0};
  const auto rec = distance_curve(c);
  const auto seq = SequenceSpec::cdd(1);
  const DensityMatrix rho = ensemble_density(c, 3.0, 0.2, RunMode::Protected, &seq);
  CHECK(is_density_matrix(rho));
  const CodeSpec code = c.code();
  const DensityMatrix target = projector(target_state(c.model(), code));
  CHECK(rec[1].d_mean == doctest::Approx(trace_distance(rho, target)).epsilon(1e-12));

  // Independent recomputation of the per-realization spread.
  const double gap = config_min_gap(c);
  const double total = 3.0 / gap;
  const double beta = 0.2 * gap;
  const EncodedPath path(c.model(total), code);
  const auto sched = seq.build(total, code);
  StepPolicy policy = default_step_policy(beta, hamiltonian_scale(path), c.min_steps_per_segment);
  std::vector<double> d;
  for (int r = 0; r < c.realizations; ++r) {
    NoiseSpec ns{beta, 4, total, std::min(0.05 / beta, sched.shortest_interval() / 10), c.master_seed, c.noise_amplitude};
    const auto noise = sample_realization(ns, static_cast<std::uint64_t>(r));
    d.push_back(trace_distance(projector(run_case(RunMode::Protected, path, code, &noise, policy, &sched)), target));
  }
  double mean = 0.0;
  for (double x : d) mean += x / d.size();
  double var = 0.0;
  for (double x : d) var += (x - mean) * (x - mean) / (d.size() - 1);
  CHECK(rec[1].d_stderr == doctest::Approx(std::sqrt(var / d.size())).epsilon(1e-9));
}

TEST_CASE("ensemble density is a valid state") {
  auto c = small_config();
  const DensityMatrix rho = ensemble_density(c, 4.0, 0.2, RunMode::Faulty);
  CHECK(is_density_matrix(rho));
  CHECK(rho.trace().real() == doctest::Approx(1.0));
}

TEST_CASE("CDD/QDD comparison requires matched pulse counts") {
  auto c = small_config();
  c.sequences = {SequenceSpec::cdd(2), SequenceSpec::qdd(1, 1)};
  CHECK_THROWS_AS(compare_cdd_qdd(c), InputError);
  c.sequences = {SequenceSpec::cdd(1), SequenceSpec::qdd(1, 1)};
  c.t_grid = {};
  CHECK(compare_cdd_qdd(c).empty());
  c.t_grid = {3.0};
  const auto rec = compare_cdd_qdd(c);
  REQUIRE(rec.size() == 2);
  CHECK(rec[0].sequence == "CDD");
  CHECK(rec[1].sequence == "QDD");
}

TEST_CASE("beta-tau sweep uses T = 4^l tau and reports interior minima") {
  ExperimentConfig c;
  c.algorithm = Algorithm::TwoSat;
  c.realizations = 2;
  c.tau_level = 1;
  c.beta_ratios = {1.0};
  c.tau_grid = {0.5, 2.0, 8.0};
  c.workers = 1;
  const auto res = sweep_beta_tau(c);
  REQUIRE(res.records.size() == 3);
  CHECK(res.records[1].t_over_invgap == doctest::Approx(8.0));
  REQUIRE(res.summaries.size() == 1);
  const auto best = std::min_element(res.records.begin(), res.records.end(),
                                     [](const RunRecord& a, const RunRecord& b) { return a.d_mean < b.d_mean; });
  CHECK(res.summaries[0].d_min == best->d_mean);
  c.tau_grid = {1.0};
  CHECK_FALSE(sweep_beta_tau(c).summaries[0].interior);
}

TEST_CASE("invalid experiment configurations are rejected") {
  auto c = small_config();
  c.realizations = 0;
  CHECK_THROWS_AS(c.validate(), InputError);
  c = small_config();
  c.t_grid = {5.0, 2.0};
  CHECK_THROWS_AS(c.validate(), InputError);
  c = small_config();
  c.beta_ratios = {-1.0};
  CHECK_THROWS_AS(c.validate(), InputError);
}

TEST_CASE("CSV round trip") {
  const auto rec = distance_curve(small_config());
  std::ostringstream os;
  write_records_csv(os, rec);
  CHECK(os.str().rfind("algorithm,sequence,level_or_order,T_over_invgap,beta_over_gap,R,D_mean,D_stderr,master_seed\n", 0) == 0);
  std::istringstream is(os.str());
  const auto back = read_records_csv(is);
  REQUIRE(back.size() == rec.size());
  for (std::size_t k = 0; k < rec.size(); ++k) {
    CHECK(back[k].d_mean == rec[k].d_mean);
    CHECK(back[k].sequence == rec[k].sequence);
    CHECK(back[k].level_or_order == rec[k].level_or_order);
  }
}

TEST_CASE("config parsing") {
  const auto rc = parse_config(R"({
    "algorithm": "2sat", "t_grid": [1, 2, 4], "beta_ratio": 0.5, "realizations": 7,
    "sequences": [{"family": "CDD", "level": 2}, {"family": "QDD", "m1": 3, "m2": 7}, "UDD:2:Y"],
    "master_seed": 42, "output": "x.csv"})");
  CHECK(rc.experiment.algorithm == Algorithm::TwoSat);
  CHECK(rc.experiment.beta_ratios == std::vector<double>{0.5});
  CHECK(rc.experiment.sequences.size() == 3);
  CHECK(rc.experiment.sequences[1].p2 == 7);
  CHECK(rc.experiment.sequences[2].axis == Pauli::Y);
  CHECK(rc.experiment.master_seed == 42);
  CHECK(rc.output == "x.csv");

  const auto again = parse_config(config_to_json(rc));
  CHECK(again.experiment.t_grid == rc.experiment.t_grid);
  CHECK(again.experiment.sequences.size() == 3);
  CHECK(again.experiment.noise_amplitude == rc.experiment.noise_amplitude);
}

TEST_CASE("config errors name the offending field") {
  auto message = [](const std::string& text) {
    try {
      parse_config(text);
    } catch (const InputError& e) {
      return std::string(e.what());
    }
    return std::string();
  };
  CHECK(message(R"({"realisations": 3})").find("realisations") != std::string::npos);
  CHECK(message(R"({"realizations": "many"})").find("realizations") != std::string::npos);
  CHECK(message(R"({"sequences": [{"family": "CDD"}]})").find("sequences[0].level") != std::string::npos);
  CHECK(message(R"({"sequences": [{"family": "CDD", "level": 1, "depth": 2}]})").find("depth") != std::string::npos);
  CHECK(message(R"({"algorithm": "shor"})").find("shor") != std::string::npos);
  CHECK(message("{not json").find("JSON") != std::string::npos);
}

TEST_CASE("sequence shorthand") {
  CHECK(parse_sequence("CDD:4").p1 == 4);
  CHECK(parse_sequence("QDD:15").p2 == 15);
  CHECK(parse_sequence("udd:3:z").axis == Pauli::Z);
  CHECK_THROWS_AS(parse_sequence("CDD"), InputError);
  CHECK_THROWS_AS(parse_sequence("CDD:x"), InputError);
  CHECK_THROWS_AS(parse_sequence("QDD:1:2:3"), InputError);
}

TEST_CASE("manifest echoes the configuration") {
  RunConfig rc;
  rc.experiment = small_config();
  ManifestInfo info;
  info.command = "run";
  info.records = distance_curve(rc.experiment);
  const std::string m = manifest_json(rc, info);
  CHECK(m.find("\"master_seed\": 1") != std::string::npos);
  CHECK(m.find("\"version\"") != std::string::npos);
  CHECK(m.find("wall_time_seconds") != std::string::npos);
}
