#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "doctest.h"
#include "interpk/io.hpp"

using namespace interpk;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string data(const char* name) { return std::string(INTERPK_TEST_DATA) + "/" + name; }

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

fs::path scratch(const char* name) {
  const fs::path dir = fs::temp_directory_path() / "interpk_cli_tests";
  fs::create_directories(dir);
  return dir / name;
}

fs::path write_config(const char* name, const std::string& text) {
  const fs::path p = scratch(name);
  std::ofstream(p) << text;
  return p;
}

std::string last_line(const std::string& text) {
  const auto end = text.find_last_not_of('\n');
  const auto start = text.rfind('\n', end);
  return text.substr(start + 1, end - start);
}

}  // namespace

TEST_CASE("cli routing and exit codes") {
  CHECK(run({"--help"}).code == cli::kOk);
  CHECK(run({"--version"}).out == std::string(io::version()) + "\n");
  CHECK(run({}).code == cli::kConfigError);
  CHECK(run({"frobnicate"}).code == cli::kConfigError);
  CHECK(run({"witness", "--p", "x"}).code == cli::kConfigError);
  CHECK(run({"witness", "--p", "2", "--q", "1", "--format", "xml"}).code == cli::kConfigError);

  const Run bad = run({"kprofile", "--config", data("unknown_key.json")});
  CHECK(bad.code == cli::kConfigError);
  CHECK(bad.err.find("couple.norm0.scale: unknown key") != std::string::npos);

  const Run broken = run({"kprofile", "--config", write_config("broken.json", "{\"couple\": ").string()});
  CHECK(broken.code == cli::kConfigError);
  CHECK(broken.err.find("malformed JSON") != std::string::npos);

  const Run missing = run({"interp-norm", "--config", data("kprofile_l1linf.json")});
  CHECK(missing.code == cli::kConfigError);
  CHECK(missing.err.find("params: required key is missing") != std::string::npos);

  const Run no_seed = run({"verify", "mainlema", "--config", data("mainlema_small.json")});
  CHECK(no_seed.code == cli::kConfigError);
  CHECK(no_seed.err.find("seed") != std::string::npos);
  CHECK(run({"verify", "nope", "--seed", "1"}).code == cli::kConfigError);
}

TEST_CASE("cli kprofile and norms") {
  const Run csv = run({"kprofile", "--config", data("kprofile_l1linf.json")});
  REQUIRE(csv.code == cli::kOk);
  CHECK(csv.out == "n,t,k\n-1,0.5,1.5\n0,1,3\n1,2,5\n2,4,6\n");

  const Run json = run({"kprofile", "--config", data("kprofile_l1linf.json"), "--format", "json"});
  const io::Json j = io::parse(json.out, "out");
  CHECK(j.at("version") == io::version());
  CHECK(j.at("config").at("couple").at("strategy") == "exact_l1_linf");
  CHECK(j.at("profile").at("k") == io::Json{1.5, 3.0, 5.0, 6.0});

  const auto cfg = write_config("interp.json", R"({
    "couple": {"norm0": {"p": 1, "weights": [1]}, "norm1": {"p": "inf", "weights": [1]},
               "strategy": "exact_l1_linf"},
    "vector": {"entries": [1]},
    "params": {"theta": 0.5, "q": 1},
    "window": {"n_min": -2, "n_max": 2}})");
  const Run in = run({"interp-norm", "--config", cfg.string()});
  REQUIRE(in.code == cli::kOk);
  // sum of 2^{-n/2} min(1, 2^n) over n = -2..2
  const double expected = 0.5 + std::sqrt(0.5) + 1 + std::sqrt(0.5) + 0.5;
  CHECK(io::parse(in.out, "out").at("value").get<double>() == doctest::Approx(expected).epsilon(1e-14));
  const Run in_q = run({"interp-norm", "--config", cfg.string(), "--q", "inf", "--format", "csv"});
  CHECK(in_q.out.rfind("value,edge_low,edge_high\n1,", 0) == 0);

  const auto lat = write_config("lattice.json", R"({
    "couple": {"norm0": {"p": 1, "weights": [1, 1]}, "norm1": {"p": "inf", "weights": [1, 1]},
               "strategy": "exact_l1_linf"},
    "vector": {"entries": [2, 1]},
    "lattice": {"r": "inf", "lattice_weights": [1], "n_min": 0}})");
  const Run ln = run({"lattice-norm", "--config", lat.string()});
  REQUIRE(ln.code == cli::kOk);
  CHECK(io::parse(ln.out, "out").at("value") == 2.0);
}

TEST_CASE("cli oracle couples need a seed") {
  const std::string body = R"({
    "couple": {"norm0": {"p": 2, "weights": [1, 1]}, "norm1": {"p": 1, "weights": [1, 2]},
               "strategy": "oracle"},
    "vector": {"entries": [1, -1]},
    "window": {"n_min": 0, "n_max": 0}})";
  const auto cfg = write_config("oracle.json", body);
  CHECK(run({"kprofile", "--config", cfg.string()}).code == cli::kConfigError);
  const Run a = run({"kprofile", "--config", cfg.string(), "--seed", "5", "--format", "json"});
  REQUIRE(a.code == cli::kOk);
  CHECK(io::parse(a.out, "out").at("config").at("couple").at("oracle").at("seed") == 5);
  CHECK(run({"kprofile", "--config", cfg.string(), "--seed", "5", "--format", "json"}).out == a.out);
}

TEST_CASE("cli s-numbers") {
  const Run s = run({"snumbers", "--matrix", data("diag34.json")});
  CHECK(s.code == cli::kOk);
  CHECK(s.out == "n,a_n\n1,4\n2,3\n");
  const Run ideal = run({"ideal-norm", "--matrix", data("diag34.json"), "--p", "2", "--q", "2"});
  CHECK(io::parse(ideal.out, "out").at("value") == 5.0);
  CHECK(run({"ideal-norm", "--matrix", data("diag34.json"), "--p", "0", "--q", "2"}).code ==
        cli::kConfigError);
  CHECK(run({"snumbers"}).code == cli::kConfigError);
}

TEST_CASE("cli witness flags at N = 2^16") {
  const Run w = run({"witness", "--p", "2", "--q", "1", "--n", "65536"});
  REQUIRE(w.code == cli::kOk);
  CHECK(w.out.rfind("p,q,n,s_n,summand,partial_sum,flag\n", 0) == 0);
  CHECK(w.out.find("\n2,1,65536,") != std::string::npos);
  CHECK(last_line(w.out).rfind("2,2,65536,", 0) == 0);
  CHECK(last_line(w.out).find(",converging") != std::string::npos);
  const auto own = w.out.find("\n2,1,65536,");
  CHECK(w.out.substr(own, w.out.find('\n', own + 1) - own).find(",diverging") != std::string::npos);

  const Run j = run({"witness", "--p", "2", "--q", "1", "--n", "65536", "--format", "json"});
  const io::Json r = io::parse(j.out, "out");
  CHECK(r.at("series")[0].at("flag") == "diverging");
  CHECK(r.at("series")[1].at("flag") == "converging");
  CHECK(r.at("flag_rule").get<std::string>().find("trend") != std::string::npos);
  CHECK(run({"witness", "--p", "2", "--q", "1", "--n", "3"}).code == cli::kConfigError);
}

TEST_CASE("cli lift and strictness") {
  const auto cfg = write_config("lift.json", R"({"epsilon": [1, 0.5, 0.3333333333333333, 0.25],
                                                  "h": [2, 4, 6, 8]})");
  const Run l = run({"lift", "--config", cfg.string()});
  CHECK(l.code == cli::kOk);
  CHECK(l.out == "n,epsilon,h,xi\n1,1,2,1\n2,0.5,4,0.5\n3,0.3333333333333333,6,0.3333333333333333\n4,0.25,8,0.25\n");
  const auto broken = write_config("lift_bad.json", R"({"epsilon": [1, 2], "h": [2, 4]})");
  const Run bad = run({"lift", "--config", broken.string()});
  CHECK(bad.code == cli::kConfigError);
  CHECK(bad.err.find("epsilon") != std::string::npos);

  const Run s = run({"strictness", "--max-exponent", "2", "--format", "json"});
  REQUIRE(s.code == cli::kOk);
  const io::Json r = io::parse(s.out, "out");
  CHECK(r.at("points").size() == 3);
  CHECK(std::abs(r.at("points")[2].at("interp_norm").get<double>() - 2.914) < 1e-3);
  CHECK(run({"strictness", "--max-exponent", "30"}).code == cli::kConfigError);
}

TEST_CASE("cli verify reports") {
  const fs::path report = scratch("mainlema.json");
  const fs::path trace = scratch("mainlema_trace.csv");
  const Run ok = run({"verify", "mainlema", "--config", data("mainlema_small.json"), "--seed", "7",
                      "--output", report.string(), "--trace", trace.string()});
  CHECK(ok.code == cli::kOk);
  CHECK(ok.out.empty());
  const io::Json j = io::parse(slurp(report), "report");
  for (const char* key : {"check", "config", "seed", "min_ratio", "max_ratio", "pass", "trace_path"}) {
    CHECK(j.contains(key));
  }
  CHECK(j.at("seed") == 7);
  CHECK(j.at("config").at("seed") == 7);
  CHECK(j.at("config").at("band_hi") == 8.0);
  CHECK(slurp(trace).rfind("dim,sample,t,lhs,rhs,ratio\n", 0) == 0);

  const Run fail = run({"verify", "mainlema", "--config", data("mainlema_narrow.json"), "--seed", "7"});
  CHECK(fail.code == cli::kVerifyFailed);
  CHECK(io::parse(fail.out, "out").at("pass") == false);

  const Run d = run({"verify", "dichotomy", "--seed", "3", "--format", "csv"});
  CHECK(d.code == cli::kOk);
  CHECK(d.out.rfind("half_width,dim,value\n", 0) == 0);
  const auto dcfg = write_config("distinct.json", R"({"length": 4096})");
  CHECK(run({"verify", "distinctness", "--config", dcfg.string()}).code == cli::kOk);
  CHECK(run({"verify", "distinctness", "--seed", "1"}).code == cli::kConfigError);
}

TEST_CASE("cli reports are byte-identical across runs and thread counts") {
  const std::vector<std::vector<std::string>> commands{
      {"verify", "mainlema", "--config", data("mainlema_small.json"), "--seed", "11"},
      {"verify", "konig", "--config", write_config("konig.json", R"({"lengths": [4, 8], "count": 30})").string(),
       "--seed", "11"},
      {"verify", "sum_intersection",
       "--config", write_config("si.json", R"({"dims": [4, 8], "count": 10})").string(), "--seed", "11"},
      {"verify", "reiteration",
       "--config", write_config("re.json", R"({"dims": [4, 8], "count": 5})").string(), "--seed", "11"},
      {"verify", "dichotomy", "--seed", "11"}};
  for (const auto& args : commands) {
    setenv("INTERPK_THREADS", "1", 1);
    const Run one = run(args);
    setenv("INTERPK_THREADS", "4", 1);
    const Run four = run(args);
    const Run again = run(args);
    unsetenv("INTERPK_THREADS");
    CHECK(one.code == cli::kOk);
    CHECK(one.out == four.out);
    CHECK(four.out == again.out);
  }
}
