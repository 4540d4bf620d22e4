#include "doctest.h"

#include <array>
#include <cstdio>
#include <fstream>
#include <sys/wait.h>

#include "clab/boolean_classes.hpp"
#include "clab/io.hpp"
#include "clab/verify.hpp"

using namespace clab;

namespace {

struct Ran {
    int code = -1;
    std::string out;
};

Ran run_cli(const std::string& args, const std::string& env = "") {
    const std::string cmd = env + (env.empty() ? "" : " ") + CLAB_BIN + std::string(" ") + args + " 2>&1";
    Ran r;
    FILE* p = popen(cmd.c_str(), "r");
    REQUIRE(p != nullptr);
    std::array<char, 4096> buf{};
    std::size_t k;
    while ((k = fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), k);
    const int st = pclose(p);
    r.code = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
    return r;
}

std::string tmp_file(const std::string& name, const std::string& body) {
    const std::string path = std::string(CLAB_TMP) + "/" + name;
    std::ofstream(path) << body;
    return path;
}

}  // namespace

TEST_CASE("spec parsing") {
    const auto a = parse_spec("mdnf:m=4,s=2,z=2");
    CHECK(a.name == "mdnf");
    CHECK(a.get_size("m") == 4);
    CHECK(a.get_size("z") == 2);
    const auto b = parse_spec("prox(inner=monclaus)");
    CHECK(b.name == "prox");
    CHECK(b.get("inner") == "monclaus");
    const auto c = parse_spec("pmon");
    CHECK(c.params.empty());
    CHECK(c.get_size("m", 3) == 3);
    CHECK(parse_spec(a.to_string()).params == a.params);
    CHECK_THROWS_AS(make_class(parse_spec("nosuch:m=2")), Error);
}

TEST_CASE("class text round trip") {
    const auto cls = gen_mon_claus(3);
    const auto back = parse_class_text(class_to_text(cls));
    REQUIRE(back.size() == cls.size());
    for (std::size_t k = 0; k < cls.size(); ++k) CHECK(back[k] == cls[k]);
    const auto parsed = parse_class_text("# comment\ndomain 3\n\n001\n110\n");
    CHECK(parsed.size() == 2);
    CHECK(parsed[1] == Concept::from_string("110"));
    try {
        parse_class_text("domain 2\n01\n01\n");
        FAIL("duplicate accepted");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::DuplicateConcept);
    }
    CHECK_THROWS_AS(parse_class_text("domain 3\n01\n"), Error);
}

TEST_CASE("csv quoting") {
    CHECK(csv_field("plain") == "plain");
    CHECK(csv_field("a,b") == "\"a,b\"");
    CHECK(csv_field("say \"hi\"") == "\"say \"\"hi\"\"\"");
    CHECK(csv_field("two\nlines") == "\"two\nlines\"");
    CHECK(csv_row({"x", "y,z"}) == "x,\"y,z\"\r\n");
}

TEST_CASE("config text") {
    const auto m = parse_config_text("# experiment\nclass = pmon:m=3\n\nlearner=pmon\n");
    CHECK(m.at("class") == "pmon:m=3");
    CHECK(m.at("learner") == "pmon");
    CHECK(m.size() == 2);
}

TEST_CASE("format_double") {
    CHECK(format_double(0.015625) == "0.015625");
    CHECK(format_double(0.0) == "0");
    CHECK(format_double(0.5) == "0.5");
}

TEST_CASE("target selection") {
    const auto cls = gen_pmon(3);
    CHECK(select_targets("all", cls).size() == cls.size());
    CHECK(select_targets("list:0,2", cls) == std::vector<std::size_t>{0, 2});
    CHECK(select_targets("random:3:9", cls) == select_targets("random:n=3,seed=9", cls));
    CHECK(select_targets("random:3:9", cls).size() == 3);
    CHECK_THROWS_AS(select_targets("list:99", cls), Error);
}

TEST_CASE("cli examples") {
    const auto sim = run_cli("simulate --class pmon:m=3 --cs min:metric=hamming --learner pmon --oracle minimax --targets all");
    REQUIRE(sim.code == 0);
    CHECK(Json::parse(sim.out).at("summary").at("max_queries") == 1);
    const auto cx = run_cli("complexity --class primed_pmon:m=2 --cs min:metric=hamming");
    REQUIRE(cx.code == 0);
    CHECK(Json::parse(cx.out).at("value") == 2);
    const auto ver = run_cli("verify --suite thm14 --trials 50 --seed 7 --format json");
    REQUIRE(ver.code == 0);
    CHECK(Json::parse(ver.out).at("failures") == 0);
}

TEST_CASE("cli reports") {
    SUBCASE("byte-identical json and round trip") {
        const std::string a = "simulate --class dl:m=3,k=1 --cs min:metric=hamming --learner monclaus "
                              "--oracle random:seed=5 --targets random:6:3 --trace";
        const auto r1 = run_cli(a);
        const auto r2 = run_cli(a);
        REQUIRE(r1.code == 0);
        CHECK(r1.out == r2.out);
        CHECK(Json::parse(r1.out).dump(2) + "\n" == r1.out);
    }
    SUBCASE("empty report is header-only csv") {
        const auto r = run_cli("simulate --class pmon:m=2 --cs min:metric=hamming --learner pmon --targets list: "
                               "--format csv");
        REQUIRE(r.code == 0);
        CHECK(r.out == "index,target,outcome,queries,hypothesis_ok\r\n");
        const auto c = run_cli("continuous --class threshold --model prox --eps 2^-4 --trials 0");
        CHECK(c.out == "trial,queries,error\r\n");
    }
    SUBCASE("csv fields with commas are quoted") {
        const auto r = run_cli("complexity --class mdnf:m=3,s=2,z=2 --cs min:metric=vs --format csv");
        REQUIRE(r.code == 0);
        CHECK(r.out.find("\"mdnf:m=3,s=2,z=2\"") != std::string::npos);
    }
}

TEST_CASE("cli exit codes") {
    const auto unknown = run_cli("complexity --class nosuch:m=2");
    CHECK(unknown.code == 2);
    CHECK(unknown.out.rfind("error: ", 0) == 0);
    CHECK(run_cli("simulate --class pmon:m=2").code == 2);
    const auto cap = run_cli("complexity --class mdnf:m=9,s=2,z=2");
    CHECK(cap.code == 3);
    CHECK(cap.out.find("CapExceeded") != std::string::npos);
    CHECK(run_cli("complexity --class pmon:m=6", "CLAB_CAPS=bool_m=4").code == 3);
    CHECK(run_cli("complexity --class pmon:m=3", "CLAB_CAPS=bool_m=4").code == 0);
    const auto bad = tmp_file("dup.txt", "domain 2\n01\n01\n");
    CHECK(run_cli("vcd --class file:path=" + bad).code == 2);
}

TEST_CASE("cli config file") {
    const auto cfg = tmp_file("exp.cfg", "# experiment\nclass=pmon:m=3\ncs=min:metric=hamming\nlearner=pmon\n"
                                         "oracle=minimax\ntargets=all\n");
    const auto a = run_cli("simulate --config " + cfg);
    REQUIRE(a.code == 0);
    const auto b = run_cli("simulate --class pmon:m=3 --cs min:metric=hamming --learner pmon --oracle minimax --targets all");
    CHECK(a.out == b.out);
    // command line wins over the file
    const auto c = run_cli("simulate --config " + cfg + " --targets list:0");
    REQUIRE(c.code == 0);
    CHECK(Json::parse(c.out).at("targets").size() == 1);
}
