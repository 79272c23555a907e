#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <thread>

#include "doctest.h"

#include "lab_app.hpp"

#include "httplib.h"

using namespace centrolab;
using lab::Json;

namespace {

struct Run {
    int code = -1;
    std::string out;
};

// runs the lab binary with stdout captured to a file
Run run_lab(const std::string& args) {
    static int counter = 0;
    const std::string out = "lab_cli_out_" + std::to_string(counter++) + ".txt";
    const std::string cmd = std::string(LAB_BINARY) + " " + args + " > " + out + " 2>/dev/null";
    const int status = std::system(cmd.c_str());
    Run r;
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    std::ifstream in(out);
    std::stringstream ss;
    ss << in.rdbuf();
    r.out = ss.str();
    std::remove(out.c_str());
    return r;
}

class TestServer {
public:
    TestServer() {
        lab::install_routes(server_);
        port_ = server_.bind_to_any_port("127.0.0.1");
        thread_ = std::thread([this] { server_.listen_after_bind(); });
        server_.wait_until_ready();
    }
    ~TestServer() {
        server_.stop();
        thread_.join();
    }
    httplib::Client client() const {
        httplib::Client c("127.0.0.1", port_);
        c.set_read_timeout(std::chrono::seconds(300));
        return c;
    }

private:
    httplib::Server server_;
    int port_ = 0;
    std::thread thread_;
};

}  // namespace

TEST_CASE("exit codes for library errors") {
    CHECK(lab::exit_code_for(ErrorKind::invalid_input) == 4);
    CHECK(lab::exit_code_for(ErrorKind::not_star_shaped) == 4);
    CHECK(lab::exit_code_for(ErrorKind::off_spectrum) == 4);
    CHECK(lab::exit_code_for(ErrorKind::bracketing) == 3);
    CHECK(lab::exit_code_for(ErrorKind::unreachable) == 3);
    CHECK(lab::exit_code_for(ErrorKind::margin) == 3);
    CHECK(lab::exit_code_for(ErrorKind::no_orbit) == 3);
}

TEST_CASE("command payloads") {
    const auto s = lab::cmd_spectrum(Rational(7, 5));
    CHECK(s["hit"] == true);
    CHECK(s["k"] == 3);
    CHECK(s["n"] == 1);
    CHECK(lab::cmd_spectrum(Rational(2))["hit"] == false);
    const auto c = lab::cmd_classify(Rational(7, 5), 64);
    CHECK(c["classification"] == "degenerate");
    CHECK(c["banner"] == "degenerate: k=3");
    const auto sym = lab::cmd_symmetry_a("inf");
    CHECK(sym["orbit_a"].size() == 3);
    CHECK_THROWS_AS(lab::solve_closed(2.0, Rational(3, 2), std::nullopt), LabError);
    const auto closed = lab::solve_closed(-1.0, Rational(5, 9), std::nullopt);
    CHECK(closed.covering == 9);
    CHECK(closed.winding == 5);
}

TEST_CASE("http endpoints") {
    TestServer server;
    auto cli = server.client();

    auto r = cli.Get("/classify?a=0.2");
    REQUIRE(r);
    CHECK(r->status == 200);
    CHECK(Json::parse(r->body)["classification"] == "local-max");

    r = cli.Get("/spectrum?a=1.4");
    REQUIRE(r);
    CHECK(r->status == 200);
    CHECK(Json::parse(r->body)["k"] == 3);

    r = cli.Get("/spectrum");
    REQUIRE(r);
    CHECK(r->status == 400);
    CHECK(Json::parse(r->body).contains("schema"));

    r = cli.Get("/classify?a=abc");
    REQUIRE(r);
    CHECK(r->status == 400);

    r = cli.Post("/solve", "{not json", "application/json");
    REQUIRE(r);
    CHECK(r->status == 400);

    r = cli.Post("/solve", R"({"a": 2})", "application/json");
    REQUIRE(r);
    CHECK(r->status == 400);

    r = cli.Post("/solve", R"({"a": 0.75, "rot": "1/3"})", "application/json");
    REQUIRE(r);
    CHECK(r->status == 422);
    CHECK(Json::parse(r->body)["detail"] == "rigidity window: constants only");

    r = cli.Post("/solve", R"({"a": 2, "rot": "3/7"})", "application/json");
    REQUIRE(r);
    CHECK(r->status == 200);
    const auto solved = Json::parse(r->body);
    CHECK(solved["rotation_number"] == "3/7");
    CHECK(solved["winding"] == 3);

    r = cli.Post("/third", R"({"eps": 0.2, "n": 1, "C": 0.3})", "application/json");
    REQUIRE(r);
    CHECK(r->status == 200);
    CHECK(Json::parse(r->body)["conic"] == true);

    r = cli.Post("/third", R"({"eps": 1.5, "n": 1, "C": 0})", "application/json");
    REQUIRE(r);
    CHECK(r->status == 400);
    r = cli.Post("/third", R"({"eps": 0.2, "n": 1.5, "C": 0})", "application/json");
    REQUIRE(r);
    CHECK(r->status == 400);

    r = cli.Get("/zoo");
    REQUIRE(r);
    CHECK(r->status == 200);
    CHECK(Json::parse(r->body).size() == 4);
}

TEST_CASE("binary: config file and flag precedence") {
    {
        std::ofstream cfg("lab_cli_test.conf");
        cfg << "[spectrum]\na=1.4\n";
    }
    auto r = run_lab("--config lab_cli_test.conf spectrum");
    CHECK(r.code == 0);
    CHECK(Json::parse(r.out)["k"] == 3);
    r = run_lab("--config lab_cli_test.conf spectrum --a 23/21");
    CHECK(r.code == 0);
    CHECK(Json::parse(r.out)["k"] == 5);
    std::remove("lab_cli_test.conf");
}

TEST_CASE("binary: exit codes") {
    CHECK(run_lab("spectrum --a 1.4").code == 0);
    CHECK(run_lab("solve --a 2 --rot 1/3").code == 3);
    CHECK(run_lab("solve --a 0.75 --rot 1/3").code == 3);
    CHECK(run_lab("spectrum --a banana").code == 4);
    CHECK(run_lab("third --eps 2 --n 1").code == 4);
    CHECK(run_lab("nonsense").code == 4);
    CHECK(run_lab("verify no-such-suite").code == 4);
    CHECK(run_lab("verify spectrum").code == 0);
}
