// Copyright 2026 The nsbasis Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "gtest/gtest.h"
#include "nsbasis/serialize.h"
#include "nsbasis/weyl.h"

using namespace nsbasis;
namespace fs = std::filesystem;

namespace {

struct CliRun {
    int code;
    std::string out;
    std::string err;
};

fs::path workdir() {
    static const fs::path dir = [] {
        fs::path d = fs::temp_directory_path() / "nsbasis_cli_test";
        fs::remove_all(d);
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

std::string slurp(const fs::path &p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

CliRun cli(const std::string &args) {
    const char *exe = std::getenv("NSBASIS_CLI");
    if (exe == nullptr) {
        ADD_FAILURE() << "NSBASIS_CLI is not set";
        return {-1, "", ""};
    }
    const fs::path out = workdir() / "stdout.txt", err = workdir() / "stderr.txt";
    const std::string cmd = "cd '" + workdir().string() + "' && '" + exe + "' " + args + " >'" + out.string() +
                            "' 2>'" + err.string() + "'";
    const int status = std::system(cmd.c_str());
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, slurp(out), slurp(err)};
}

void write_unitary(const std::string &name, const Mat4 &u) {
    write_json((workdir() / name).string(), to_json(MatX(u)));
}

}  // namespace

TEST(cli, usage_errors_exit_with_two) {
    EXPECT_EQ(cli("").code, 2);
    EXPECT_EQ(cli("frobnicate").code, 2);
    EXPECT_EQ(cli("device gen --rows 2 --cols 2").code, 2);
    EXPECT_EQ(cli("feas volume --region s_swap3").code, 2);
    EXPECT_EQ(cli("feas check --coords 0.1,0.2").code, 2);
    EXPECT_EQ(cli("feas volume --region nowhere --seed 1").code, 2);
    EXPECT_EQ(cli("--help").code, 0);
}

TEST(cli, missing_device_file_is_a_tagged_stage_failure) {
    const CliRun r = cli("traj simulate --device absent.json --edge 0,0,0,1");
    EXPECT_EQ(r.code, 3);
    EXPECT_NE(r.err.find("stage 'traj'"), std::string::npos) << r.err;
    EXPECT_NE(r.err.find("absent.json"), std::string::npos) << r.err;
    const CliRun b = cli("basis select --device absent.json --criterion criterion1");
    EXPECT_EQ(b.code, 3);
    EXPECT_NE(b.err.find("stage 'basis'"), std::string::npos) << b.err;
}

TEST(cli, weyl_coords_of_named_gates) {
    write_unitary("swap.json", gates::swap());
    write_unitary("cnot.json", gates::cnot());
    write_unitary("sqiswap.json", gates::sqrt_iswap());
    EXPECT_EQ(cli("weyl coords --unitary swap.json").out, "[0.5, 0.5, 0.5]\n");
    EXPECT_EQ(cli("weyl coords --unitary cnot.json").out, "[0.5, 0, 0]\n");
    EXPECT_EQ(cli("weyl coords --unitary sqiswap.json").out, "[0.25, 0.25, 0]\n");
    write_json((workdir() / "bad.json").string(), Json::parse("[[2,0],[0,0],[0,0],[0,0],[0,0],[1,0],[0,0],[0,0],"
                                                              "[0,0],[0,0],[1,0],[0,0],[0,0],[0,0],[0,0],[1,0]]"));
    EXPECT_EQ(cli("weyl coords --unitary bad.json").code, 3);
}

TEST(cli, feasibility_queries) {
    EXPECT_EQ(cli("feas check --coords 0.25,0.25,0 --query swap3").out, "[0.25, 0.25, 0] true\n");
    EXPECT_EQ(cli("feas check --coords 0.1,0,0 --query pe").out, "[0.1, 0, 0] false\n");
    const CliRun v = cli("feas volume --region pe --samples 20000 --seed 3");
    EXPECT_EQ(v.code, 0);
    EXPECT_EQ(v.out.rfind("pe 0.", 0), 0u) << v.out;
    EXPECT_EQ(cli("feas volume --region pe --samples 20000 --seed 3").out, v.out);
}

TEST(cli, device_generation_is_seeded) {
    ASSERT_EQ(cli("device gen --rows 2 --cols 3 --seed 11 --out d1.json").code, 0);
    ASSERT_EQ(cli("device gen --rows 2 --cols 3 --seed 11 --out d2.json").code, 0);
    ASSERT_EQ(cli("device gen --rows 2 --cols 3 --seed 12 --out d3.json").code, 0);
    EXPECT_EQ(slurp(workdir() / "d1.json"), slurp(workdir() / "d2.json"));
    EXPECT_NE(slurp(workdir() / "d1.json"), slurp(workdir() / "d3.json"));
    const Json j = read_json((workdir() / "d1.json").string());
    EXPECT_EQ(j.at("meta").at("seed"), 11);
    EXPECT_EQ(j.at("meta").at("kind"), "device");
    EXPECT_EQ(j.at("device").at("edges").size(), 7u);
    EXPECT_EQ(cli("traj simulate --device d1.json --edge 0,0,1,1").code, 3);
    EXPECT_EQ(cli("traj simulate --device d1.json --edge 0,0,0,1 --t-max soon").code, 2);
}

TEST(cli, stages_hand_off_through_files) {
    ASSERT_EQ(cli("device gen --rows 1 --cols 2 --seed 5 --out dev.json").code, 0);
    const CliRun t = cli("traj simulate --device dev.json --edge 0,0,0,1 --xi 0.04 --t-max 20ns --spacing 1ns --out traj.json");
    ASSERT_EQ(t.code, 0) << t.err;
    EXPECT_EQ(read_json((workdir() / "traj.json").string()).at("trajectory").at("samples").size(), 21u);
    const CliRun b = cli("basis select --device dev.json --criterion criterion2 --xi 0.04 --out basis.json");
    ASSERT_EQ(b.code, 0) << b.err;
    EXPECT_EQ(read_json((workdir() / "basis.json").string()).at("assignments").size(), 1u);
    const CliRun s = cli("synth --basis basis.json --target cnot --seed 1 --out cache.json");
    ASSERT_EQ(s.code, 0) << s.err;
    const Json cache = read_json((workdir() / "cache.json").string());
    EXPECT_EQ(cache.at("cache").at("entries").size(), 1u);
    EXPECT_EQ(cache.at("meta").at("seed"), 1);
    std::ofstream((workdir() / "c.qasm").string()) << "OPENQASM 2.0;\ninclude \"qelib1.inc\";\nqreg q[2];\n"
                                                      "h q[0];\ncx q[0],q[1];\nrz(0.3) q[1];\n";
    const CliRun x = cli("transpile --circuit c.qasm --device dev.json --basis-set basis.json --cache cache.json "
                      "--out sched.json");
    ASSERT_EQ(x.code, 0) << x.err;
    const Json sched = read_json((workdir() / "sched.json").string());
    EXPECT_EQ(sched.at("native_two_qubit_gates"), 2);
    EXPECT_GT(sched.at("fidelity").get<double>(), 0.99);
    EXPECT_EQ(sched.at("meta").at("kind"), "scheduled_circuit");
    EXPECT_EQ(cli("transpile --circuit none.qasm --device dev.json --basis-set basis.json").code, 3);
}

TEST(cli, pipeline_reruns_are_byte_identical) {
    const std::string args = "pipeline run --seed 3 --rows 1 --cols 3 --benchmarks bv3,qft3 --restarts 16 --out ";
    const CliRun a = cli(args + "run_a");
    ASSERT_EQ(a.code, 0) << a.err;
    ASSERT_EQ(cli(args + "run_b").code, 0);
    for (const char *f : {"report.md", "report_gates.csv", "report_circuits.csv", "device.json", "basis_criterion2.json"}) {
        const std::string ra = slurp(workdir() / "run_a" / f);
        EXPECT_FALSE(ra.empty()) << f;
        EXPECT_EQ(ra, slurp(workdir() / "run_b" / f)) << f;
    }
    const std::string report = slurp(workdir() / "run_a" / "report.md");
    for (const char *col : {"baseline_sqiswap", "criterion1", "criterion2"}) {
        EXPECT_NE(report.find(col), std::string::npos) << col;
    }
    ASSERT_EQ(cli("report --dir run_a").code, 0);
    EXPECT_EQ(slurp(workdir() / "run_a" / "report.md"), report);
    const Json circuit = read_json((workdir() / "run_a" / "circuits" / "qft3_criterion1.json").string());
    EXPECT_EQ(circuit.at("meta").at("seed"), 3);
    EXPECT_EQ(circuit.at("meta").at("config_hash"),
              read_json((workdir() / "run_a" / "config.json").string()).at("meta").at("config_hash"));

    fs::remove(workdir() / "run_b" / "device.json");
    const CliRun r = cli("report --dir run_b");
    EXPECT_EQ(r.code, 3);
    EXPECT_NE(r.err.find("stage 'report'"), std::string::npos) << r.err;
}
