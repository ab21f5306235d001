// Apache License, Version 2.0, refer to LICENSE.txt

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <string>
#include <unistd.h>
#include <vector>

#include "rw2cf/draws.hpp"
#include "rw2cf/errors.hpp"

using namespace rw2cf;

namespace {

std::filesystem::path temp_path(const std::string& tag) {
  return std::filesystem::temp_directory_path() /
         ("rw2cf_draws_" + std::to_string(::getpid()) + "_" + tag + ".csv");
}

PosteriorDraws small_draws() {
  PosteriorDraws d;
  d.coef_names = {"temp", "rain"};
  d.T = 3;
  d.chain_id = {1, 1, 2, 2};
  d.iteration = {10, 20, 10, 20};
  d.beta0 = {0.1, 0.2, 0.30000000000000004, -0.4};
  d.beta.resize(4, 2);
  d.beta << 1.5, -2.5, 0.25, 1e-17, 3.5, 12345678.901234567, -0.75, 2e-300;
  d.gamma = {0.5, 0.6, 0.7, 0.8};
  d.tau = {1.0, 2.0, 3.0, 4.0};
  d.tau_e = {10.0, 20.0, 30.0, 40.0};
  d.u.resize(4, 3);
  d.u << 0.1, 0.2, 0.3, -0.1, -0.2, -0.3, 1.1, 1.2, 1.3, -1.1, -1.2, -1.3;
  return d;
}

std::string first_line(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::string line;
  std::getline(in, line);
  return line;
}

}  // namespace

TEST_CASE("quantiles interpolate order statistics") {
  std::vector<double> hundred(100);
  for (int i = 0; i < 100; ++i) hundred[static_cast<std::size_t>(i)] = i + 1;
  CHECK(quantile(hundred, 0.025) == doctest::Approx(3.475).epsilon(1e-15));
  CHECK(quantile(hundred, 0.5) == doctest::Approx(50.5).epsilon(1e-15));
  CHECK(quantile(hundred, 0.975) == doctest::Approx(97.525).epsilon(1e-15));
  CHECK(quantile(hundred, 0.0) == 1.0);
  CHECK(quantile(hundred, 1.0) == 100.0);

  CHECK(quantile({7.0, 9.0, 8.0}, 0.5) == 8.0);
  CHECK(quantile({4.0}, 0.025) == 4.0);
  CHECK(quantile({4.0}, 0.975) == 4.0);
  CHECK(quantile({1.0, 2.0}, 0.75) == doctest::Approx(1.75).epsilon(1e-15));

  CHECK_THROWS_AS(quantile({}, 0.5), ValidationError);
  CHECK_THROWS_AS(quantile({1.0}, -0.1), ValidationError);
  CHECK_THROWS_AS(quantile({1.0}, 1.1), ValidationError);
}

TEST_CASE("unsorted input does not change the quantile") {
  std::vector<double> sorted{1, 2, 3, 4, 5, 6, 7};
  std::vector<double> shuffled{5, 1, 7, 3, 6, 2, 4};
  for (double p : {0.025, 0.25, 0.5, 0.9, 0.975}) {
    CHECK(quantile(sorted, p) == quantile(shuffled, p));
  }
}

TEST_CASE("mean and sample sd") {
  std::vector<double> v{2, 4, 6, 8};
  CHECK(mean_of(v) == 5.0);
  CHECK(sd_of(v) == doctest::Approx(std::sqrt(20.0 / 3.0)).epsilon(1e-15));
  CHECK_THROWS_AS(mean_of({}), ValidationError);
  CHECK_THROWS_AS(sd_of({1.0}), ValidationError);
}

TEST_CASE("column accessors address the schema names") {
  PosteriorDraws d = small_draws();
  CHECK(d.column("beta0") == d.beta0);
  CHECK(d.column("gamma") == d.gamma);
  CHECK(d.column("tau") == d.tau);
  CHECK(d.column("tau_e") == d.tau_e);
  CHECK(d.column("beta.temp") == std::vector<double>{1.5, 0.25, 3.5, -0.75});
  CHECK(d.column("beta.rain")[3] == 2e-300);
  CHECK(d.column("u.2") == std::vector<double>{0.2, -0.2, 1.2, -1.2});
  CHECK_THROWS_AS(d.column("beta.ghost"), ValidationError);
  CHECK_THROWS_AS(d.column("u.4"), ValidationError);
  CHECK_THROWS_AS(d.column("sigma"), ValidationError);
}

TEST_CASE("the draws file header is stable") {
  PosteriorDraws d = small_draws();
  auto path = temp_path("header");
  write_draws_csv(d, path.string());
  CHECK(first_line(path) ==
        "chain,iter,beta0,beta.temp,beta.rain,gamma,tau,tau_e,u.1,u.2,u.3");
  std::filesystem::remove(path);
}

TEST_CASE("draws round-trip through the file exactly") {
  PosteriorDraws d = small_draws();
  auto path = temp_path("roundtrip");
  write_draws_csv(d, path.string());
  PosteriorDraws back = read_draws_csv(path.string());
  std::filesystem::remove(path);

  CHECK(back.coef_names == d.coef_names);
  CHECK(back.T == d.T);
  CHECK(back.chain_id == d.chain_id);
  CHECK(back.iteration == d.iteration);
  CHECK(back.beta0 == d.beta0);
  CHECK(back.gamma == d.gamma);
  CHECK(back.tau == d.tau);
  CHECK(back.tau_e == d.tau_e);
  CHECK(back.beta.isApprox(d.beta, 0.0));
  CHECK(back.u.isApprox(d.u, 0.0));
}

TEST_CASE("the reader rejects off-contract files") {
  auto write_text = [&](const std::string& tag, const std::string& text) {
    auto p = temp_path(tag);
    std::ofstream out(p);
    out << text;
    return p;
  };
  SUBCASE("unexpected trailing column") {
    auto p = write_text("extra", "chain,iter,beta0,gamma,tau,tau_e,u.1,u.2,extra\n");
    CHECK_THROWS_AS(read_draws_csv(p.string()), ParseError);
    std::filesystem::remove(p);
  }
  SUBCASE("trend columns out of order") {
    auto p = write_text("order", "chain,iter,beta0,gamma,tau,tau_e,u.2,u.1\n");
    CHECK_THROWS_AS(read_draws_csv(p.string()), ParseError);
    std::filesystem::remove(p);
  }
  SUBCASE("missing variance columns") {
    auto p = write_text("novar", "chain,iter,beta0,gamma,u.1,u.2\n");
    CHECK_THROWS_AS(read_draws_csv(p.string()), ParseError);
    std::filesystem::remove(p);
  }
  SUBCASE("no trend columns") {
    auto p = write_text("nou", "chain,iter,beta0,gamma,tau,tau_e\n1,1,0,0,1,1\n");
    CHECK_THROWS_AS(read_draws_csv(p.string()), ParseError);
    std::filesystem::remove(p);
  }
  SUBCASE("bad numeric cell") {
    auto p = write_text("badnum",
                        "chain,iter,beta0,gamma,tau,tau_e,u.1,u.2\n"
                        "1,1,0,0,1,abc,0,0\n");
    CHECK_THROWS_AS(read_draws_csv(p.string()), ParseError);
    std::filesystem::remove(p);
  }
  SUBCASE("wrong cell count") {
    auto p = write_text("short",
                        "chain,iter,beta0,gamma,tau,tau_e,u.1,u.2\n"
                        "1,1,0,0,1,1,0\n");
    CHECK_THROWS_AS(read_draws_csv(p.string()), ParseError);
    std::filesystem::remove(p);
  }
  SUBCASE("header only") {
    auto p = write_text("empty", "chain,iter,beta0,gamma,tau,tau_e,u.1,u.2\n");
    CHECK_THROWS_AS(read_draws_csv(p.string()), ParseError);
    std::filesystem::remove(p);
  }
  SUBCASE("missing file") {
    CHECK_THROWS_AS(read_draws_csv("/nonexistent/draws.csv"), ParseError);
  }
}
