#include "doctest.h"

#include "qf/arith.hpp"
#include "qf/fltclaims.hpp"
#include "qf/report.hpp"

#include "json.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <sys/wait.h>

using namespace qf;

namespace {

RunConfig small_config()
{
    RunConfig c;
    c.height_bound = 60;
    return c;
}

std::vector<std::string> ids_of(const std::vector<ClaimRecord>& v)
{
    std::vector<std::string> out;
    for (auto& r : v)
        out.push_back(r.id);
    return out;
}

int run_cli(const std::string& args)
{
    std::string cmd = std::string(QF_VERIFY_BIN) + " " + args + " > /dev/null 2>&1";
    int rc = std::system(cmd.c_str());
    return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

std::string slurp(const std::string& path)
{
    std::ifstream f(path, std::ios::binary);
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

std::string tmp_path(const std::string& name) { return (std::filesystem::temp_directory_path() / name).string(); }

} // namespace

TEST_CASE("registry contents")
{
    const auto& reg = claim_registry();
    std::set<std::string> ids;
    for (size_t i = 0; i < reg.size(); ++i) {
        CHECK(ids.insert(reg[i].id).second);
        if (i)
            CHECK(reg[i - 1].id < reg[i].id);
        CHECK_FALSE(reg[i].expected.empty());
        CHECK_FALSE(reg[i].paper_ref.empty());
    }
    CHECK(list_claims("kraus.*").size() >= 17);
    auto jac = ids_of(list_claims("jac.*"));
    for (const char* id : {"jac.x023.f47", "jac.x023.f71", "jac.c9.f5", "jac.c9.f13"})
        CHECK(std::count(jac.begin(), jac.end(), id) == 1);
    CHECK(list_claims("nomatch.*").empty());
    CHECK(list_claims("").size() == reg.size());
    CHECK(list_claims("bound.*,quartic.case.1").size() == 3);
    CHECK(list_claims("quartic.case.?").size() == 9);
}

TEST_CASE("every pipeline check is registered")
{
    PipelineOptions o;
    o.height = 30;
    std::vector<CheckResult> all = n9_pipeline();
    auto add = [&](std::vector<CheckResult> v) { all.insert(all.end(), v.begin(), v.end()); };
    add(n6_pipeline(o));
    for (const char* l : {"X023", "X026", "X034", "X038"})
        add(modcurve_checks(l, o));
    std::set<std::string> names;
    for (auto& c : all)
        names.insert(c.name);
    CHECK(names.size() == all.size());
    std::set<std::string> reg;
    for (auto& r : claim_registry())
        reg.insert(r.id);
    for (auto& n : names)
        CHECK_MESSAGE(reg.count(n), n);
    for (auto& r : claim_registry())
        if (r.id.rfind("n9.", 0) == 0 || r.id.rfind("n6.", 0) == 0 || r.id.rfind("x0", 0) == 0 || r.id.rfind("jac.", 0) == 0)
            CHECK_MESSAGE(names.count(r.id), r.id);
}

TEST_CASE("single claims")
{
    auto e = run_claims({"bound.oesterle.d8"}, small_config());
    REQUIRE(e.size() == 1);
    CHECK(e[0].status == Status::Verified);
    CHECK(e[0].computed == "6724");

    auto q = run_claims({"quartic.case.8"}, small_config());
    CHECK(q[0].status == Status::Verified);
    CHECK(q[0].computed.find("4 = 0") != std::string::npos);

    auto s = run_claims({"n6.search.c3"}, small_config());
    CHECK(s[0].evidence_note.rfind("evidence:", 0) == 0);
    auto f = run_claims({"n6.selmer.c3c6", "kraus.window.q2q3"}, small_config());
    for (auto& x : f)
        CHECK(x.evidence_note.rfind("fixture:", 0) == 0);

    auto r = run_claims({"jac.x023.f47"}, small_config());
    CHECK(r[0].status == Status::Refuted);
    CHECK(exit_code_for(r) == ExitRefuted);

    CHECK_THROWS_AS(run_claims({"no.such.claim"}, small_config()), domain_error);
    RunConfig bad = small_config();
    bad.field = "q2q5";
    CHECK_THROWS_AS(run_claims({"bound.oesterle.d8"}, bad), domain_error);
}

TEST_CASE("selected field")
{
    RunConfig c = small_config();
    c.field = "q2q11";
    auto e = run_claims({"kraus.window.field"}, c);
    CHECK(e[0].status == Status::Verified);
    CHECK(e[0].computed == "{197}");
    nlohmann::json j = nlohmann::json::parse(report_json(e, c));
    CHECK(j["field"] == "q2q11");
}

TEST_CASE("exit codes")
{
    auto mk = [](Status s) {
        ReportEntry e;
        e.id = "x";
        e.status = s;
        return e;
    };
    CHECK(exit_code_for({mk(Status::Verified)}) == 0);
    CHECK(exit_code_for({mk(Status::Verified), mk(Status::Inconclusive)}) == 3);
    CHECK(exit_code_for({mk(Status::Inconclusive), mk(Status::Refuted)}) == 2);
    CHECK(exit_code_for({mk(Status::Skipped)}) == 3);
}

TEST_CASE("json schema and round trip")
{
    ReportEntry e{"bound.oesterle.d8", Status::Verified, "6724", "6724", 5, "\"(1+3^4)^2=6724\"", ""};
    std::string s = report_json({e}, small_config());
    nlohmann::json j = nlohmann::json::parse(s);
    std::set<std::string> top, keys;
    for (auto& [k, v] : j.items())
        top.insert(k);
    CHECK(top == std::set<std::string>{"entries", "field", "tool_version"});
    REQUIRE(j["entries"].size() == 1);
    for (auto& [k, v] : j["entries"][0].items())
        keys.insert(k);
    CHECK(keys == std::set<std::string>{"computed", "elapsed_ms", "evidence_note", "expected", "id", "paper_ref", "status"});
    CHECK(j["entries"][0]["status"] == "verified");
    CHECK(j["entries"][0]["elapsed_ms"] == 5);
    CHECK(j.dump(2) + "\n" == s);
    CHECK(strip_elapsed(s).find("\"elapsed_ms\": 0") != std::string::npos);
}

TEST_CASE("reports are deterministic")
{
    std::vector<std::string> ids = ids_of(list_claims("quartic.*,kraus.table.*,n9.*,x034.*,bound.*,torsion.*"));
    RunConfig c1 = small_config(), c3 = small_config();
    c3.threads = 3;
    auto a = run_claims(ids, c1), b = run_claims(ids, c3);
    CHECK(strip_elapsed(report_json(a, c1)) == strip_elapsed(report_json(b, c1)));
    CHECK(report_text(a) == report_text(b));

    std::string text = report_text(a);
    std::vector<std::string> lines;
    std::stringstream ss(text);
    for (std::string l; std::getline(ss, l);)
        lines.push_back(l);
    CHECK(lines.size() == ids.size());
    CHECK(std::is_sorted(lines.begin(), lines.end()));
    size_t col = lines[0].find("verified");
    for (auto& l : lines)
        CHECK(l.find_first_not_of(' ', l.find(' ')) == col);

    auto counts = [](const std::vector<ReportEntry>& v) {
        int r = 0, i = 0;
        for (auto& e : v) {
            r += e.status == Status::Refuted;
            i += e.status == Status::Inconclusive;
        }
        return std::make_pair(r, i);
    };
    auto [r, i] = counts(a);
    CHECK(exit_code_for(a) == (r ? 2 : i ? 3 : 0));
}

TEST_CASE("emit_report")
{
    ReportEntry e{"bound.oesterle.d8", Status::Verified, "6724", "6724", 1, "ref", ""};
    std::string p = tmp_path("qf_report_test.json");
    emit_report({e}, small_config(), "json", p);
    CHECK(nlohmann::json::parse(slurp(p))["entries"][0]["id"] == "bound.oesterle.d8");
    std::string t = tmp_path("qf_report_test.txt");
    emit_report({e}, small_config(), "text", t);
    CHECK(slurp(t) == report_text({e}));
    CHECK_THROWS_AS(emit_report({e}, small_config(), "json", "/nonexistent-dir/x.json"), std::runtime_error);
    CHECK_THROWS_AS(emit_report({}, small_config(), "json", p), domain_error);
    CHECK_THROWS_AS(emit_report({e}, small_config(), "xml", p), domain_error);
    std::filesystem::remove(p);
    std::filesystem::remove(t);
}

TEST_CASE("command line")
{
    CHECK(run_cli("--claims bound.oesterle.d8") == 0);
    CHECK(run_cli("--claims jac.x023.f47 --height-bound 50") == 2);
    CHECK(run_cli("--claims 'nomatch.*'") == 64);
    CHECK(run_cli("") == 64);
    CHECK(run_cli("--all --claims 'bound.*'") == 64);
    CHECK(run_cli("--claims bound.oesterle.d8 --field q2q5") == 64);
    CHECK(run_cli("--claims bound.oesterle.d8 --threads 0") == 64);
    CHECK(run_cli("--claims bound.oesterle.d8 --json /nonexistent-dir/r.json") == 74);
    CHECK(run_cli("--list --claims 'kraus.*'") == 0);

    std::string p = tmp_path("qf_cli_env.json");
    std::string env = "QF_VERIFY_FIELD=q2q11 QF_VERIFY_JSON=" + p + " ";
    int rc = std::system((env + QF_VERIFY_BIN + " --claims kraus.window.field > /dev/null 2>&1").c_str());
    CHECK(WEXITSTATUS(rc) == 0);
    nlohmann::json j = nlohmann::json::parse(slurp(p));
    CHECK(j["field"] == "q2q11");
    CHECK(j["entries"][0]["computed"] == "{197}");
    /* flags win over the environment */
    rc = std::system((env + QF_VERIFY_BIN + " --field q2q3 --claims kraus.window.field > /dev/null 2>&1").c_str());
    CHECK(WEXITSTATUS(rc) == 0);
    CHECK(nlohmann::json::parse(slurp(p))["field"] == "q2q3");
    std::filesystem::remove(p);
}
