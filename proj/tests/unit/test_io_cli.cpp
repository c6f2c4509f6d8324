#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <json.hpp>

#include "qstfid/cli.hpp"
#include "qstfid/errors.hpp"
#include "qstfid/json_io.hpp"
#include "test_util.hpp"

using namespace qstfid;
using namespace qstfid::cli;
namespace fs = std::filesystem;

namespace {

int run_cli_env(const std::string& env, const std::string& args) {
  const std::string cmd = env + " " + std::string(QSTFIDLAB_CLI) + " " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

int run_cli(const std::string& args) { return run_cli_env("", args); }

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "qstfid_unit";
  fs::create_directories(dir);
  return dir / name;
}

}  // namespace

TEST(FormatDoubleTest, SeventeenDigitRoundTrip) {
  EXPECT_EQ(format_double(0.5), "0.5");
  EXPECT_EQ(format_double(1.0), "1.0");
  EXPECT_EQ(format_double(-0.0), "-0.0");
  EXPECT_EQ(format_double(1e-20), "9.9999999999999995e-21");  // 17 significant digits
  EXPECT_EQ(std::stod(format_double(1e-20)), 1e-20);
  EXPECT_EQ(std::stod(format_double(0.1 + 0.2)), 0.1 + 0.2);
}

TEST(JsonTest, StateRoundTrip) {
  const PureState psi = testutil::random_state(3, 60);
  const PureState back = parse_state_json(state_to_json(psi));
  ASSERT_EQ(back.n_qubits(), 3);
  for (std::size_t i = 0; i < psi.dimension(); ++i) EXPECT_EQ(back[i], psi[i]);
}

TEST(JsonTest, ParseErrors) {
  EXPECT_THROW(parse_state_json("{"), ParseError);
  EXPECT_THROW(parse_state_json("{\"amplitudes\": [[1, 0, 0]]}"), ParseError);
  EXPECT_THROW(parse_state_json("{\"n_qubits\": 2, \"amplitudes\": [1, 0]}"), ShapeError);
  EXPECT_THROW(parse_canonical_json("{\"lambda\": [1, 0, 0]}"), ParseError);
  EXPECT_THROW(parse_chain_json("{\"N\": 3, \"J\": [1]}"), ShapeError);
  const ChainSpec spec = parse_chain_json("{\"N\": 2, \"J\": [0.5]}");
  EXPECT_EQ(spec.fields.size(), 2u);
  EXPECT_THROW(read_text_file("/nonexistent/dir/file.json"), IoError);
}

TEST(JsonTest, WriterProducesValidJson) {
  JsonWriter w;
  w.begin_object().key("a").value(1).key("b").begin_array(true).value(0.5).value(Complex(1.0, -2.0)).end_array();
  w.key("c").null().key("d").value("x\"y").end_object();
  const auto doc = nlohmann::json::parse(w.str());
  EXPECT_EQ(doc["b"][1][1].get<double>(), -2.0);
  EXPECT_EQ(doc["d"].get<std::string>(), "x\"y");
}

TEST(GridTest, ParseAndEndpoints) {
  const Grid g = Grid::parse("0.5:1:501");
  EXPECT_EQ(g.at(0), 0.5);
  EXPECT_EQ(g.at(500), 1.0);
  EXPECT_THROW(Grid::parse("0.5:1"), UsageError);
  EXPECT_THROW(Grid::parse("1:0.5:10"), UsageError);
  EXPECT_THROW(Grid::parse("0.5:1:1"), UsageError);
  EXPECT_EQ(parse_number_list("0.1,0.2").size(), 2u);
  EXPECT_THROW(parse_number_list("0.1,x"), UsageError);
}

TEST(SweepTest, ReductionFactorTable) {
  SweepSpec spec;
  spec.quantity = "R2";
  spec.f1 = Grid::parse("0.5:1:11");
  const SweepTable t = run_sweep(spec);
  ASSERT_EQ(t.rows.size(), 11u);
  EXPECT_EQ(t.columns.front(), "F1");
  EXPECT_NEAR(t.rows[5][1], 0.0625, 1e-15);
  const std::string csv = render_csv(t);
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "F1,R2");
  const auto doc = nlohmann::json::parse(render_json(t));
  EXPECT_FALSE(doc.is_null());
}

TEST(SweepTest, HaarAndClassTables) {
  SweepSpec haar;
  haar.quantity = "haar";
  haar.n = 3;
  haar.f_abs = Grid::parse("0:1:5");
  const SweepTable h = run_sweep(haar);
  EXPECT_EQ(h.rows.size(), 5u);
  EXPECT_EQ(h.columns.size(), 5u);
  SweepSpec cls;
  cls.quantity = "class_avg";
  cls.f1 = Grid::parse("0.5:1:3");
  EXPECT_EQ(run_sweep(cls).columns.size(), 10u);
  SweepSpec bad;
  bad.quantity = "nope";
  EXPECT_THROW(run_sweep(bad), UsageError);
}

TEST(VerifyTest, RejectsBadOptions) {
  VerifyOptions o;
  o.samples = 10;
  EXPECT_THROW(run_verify(o), UsageError);
  o.samples = 1000;
  o.suite = "bogus";
  EXPECT_THROW(run_verify(o), UsageError);
}

TEST(VerifyTest, SmallSuiteReportShape) {
  VerifyOptions o;
  o.suite = "invariants";
  o.samples = 2000;
  o.seed = 3;
  const VerifyReport r = run_verify(o);
  EXPECT_EQ(r.checks.size(), 5u);
  const auto doc = nlohmann::json::parse(report_to_json(r));
  EXPECT_EQ(doc["checks_total"].get<int>(), 5);
  EXPECT_EQ(doc["suite"].get<std::string>(), "invariants");
  EXPECT_EQ(report_to_json(r), report_to_json(run_verify(o)));
}

TEST(VerifyTest, CheckRule) {
  EXPECT_TRUE(make_check("a", 1.0, 1.0 + 3.9e-3, 1e-3).pass);
  EXPECT_FALSE(make_check("a", 1.0, 1.0 + 4.1e-3, 1e-3).pass);
  EXPECT_TRUE(make_check("a", 1.0, 1.0, 0.0).pass);
  EXPECT_NE(check_seed(0, "x"), check_seed(0, "y"));
}

TEST(CommandsTest, ClassifyAndChannel) {
  const auto doc = nlohmann::json::parse(run_classify(CanonicalState::make({0.5, 0.5, 0.5, 0.5, 0.0}, 0.0), 1e-9));
  EXPECT_EQ(doc["class"].get<std::string>(), "c4a");
  const PureState bell = make_pure_state({1.0, 0.0, 0.0, 1.0});
  const ChannelResult r = run_channel(bell, {TransitionAmplitude::polar(0.0)});
  EXPECT_NEAR(r.fidelity, 0.5, 1e-15);
  EXPECT_THROW(run_channel(bell, std::vector<TransitionAmplitude>(3, TransitionAmplitude::polar(0.5))), UsageError);
}

TEST(CliBinaryTest, ExitCodes) {
  const fs::path state = scratch("bell.json");
  write_text_file(state, "{\"n_qubits\": 2, \"amplitudes\": [[1, 0], [0, 0], [0, 0], [1, 0]]}");
  EXPECT_EQ(run_cli("sweep --quantity R3 --f1 0.5:1:11"), 0);
  EXPECT_EQ(run_cli("sweep --quantity R3 --f1 0.5:1"), 2);
  EXPECT_EQ(run_cli("verify --suite haar --samples 10"), 2);
  EXPECT_EQ(run_cli("channel --state " + state.string() + " --f-abs 0.6"), 0);
  EXPECT_EQ(run_cli("channel --state " + state.string() + " --f-abs 0.6,0.5,0.4"), 2);
  EXPECT_EQ(run_cli("channel --state /nonexistent/x.json --f-abs 0.6"), 3);
  EXPECT_EQ(run_cli("channel --state " + state.string() + " --f-abs 0.6 --out /nonexistent/dir/o.json"), 3);
  EXPECT_EQ(run_cli("frobnicate"), 2);
  EXPECT_EQ(run_cli("sweep --quantity haar --n 3 --f-abs 0:1:3"), 0);
  EXPECT_EQ(run_cli_env("QSTFIDLAB_MAX_QUBITS=2", "sweep --quantity haar --n 3 --f-abs 0:1:3"), 2);
}

TEST(CliBinaryTest, ChannelOutputFile) {
  const fs::path state = scratch("bell2.json");
  const fs::path out = scratch("out.json");
  write_text_file(state, "{\"amplitudes\": [1, 0, 0, 1]}");
  ASSERT_EQ(run_cli("channel --state " + state.string() + " --f-abs 0.6 --out " + out.string()), 0);
  const auto doc = nlohmann::json::parse(read_text_file(out));
  EXPECT_NEAR(doc["fidelity"].get<double>(), 0.5648, 1e-12);
  EXPECT_EQ(doc["rho"]["rho"].size(), 4u);
}
