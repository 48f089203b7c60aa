// Runs the installed command-line tool as a subprocess.
#include <sys/wait.h>

#include <cstdlib>
#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"

namespace fs = std::filesystem;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

fs::path tmpdir() {
    static const fs::path dir = [] {
        fs::path d(ACTDATE_TEST_TMPDIR);
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

Run run(const std::string& args) {
    const fs::path out = tmpdir() / "stdout.txt", err = tmpdir() / "stderr.txt";
    const std::string cmd =
        std::string("'") + ACTDATE_CLI_PATH + "' " + args + " >'" + out.string() + "' 2>'" + err.string() + "'";
    const int status = std::system(cmd.c_str());
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, slurp(out), slurp(err)};
}

std::string p(const std::string& name) { return "'" + (tmpdir() / name).string() + "'"; }

std::size_t count_lines(const std::string& text) {
    std::size_t n = 0;
    for (char c : text)
        n += c == '\n';
    return n;
}

}  // namespace

TEST_CASE("simulate is byte-identical for equal seeds") {
    const auto a = run("simulate --density 0.5 --seed 7 --out-edges " + p("e1.csv") + " --out-truth " + p("t1.csv"));
    const auto b = run("simulate --density 0.5 --seed 7 --out-edges " + p("e2.csv") + " --out-truth " + p("t2.csv"));
    REQUIRE(a.code == 0);
    REQUIRE(b.code == 0);
    CHECK(a.out == b.out);
    CHECK(a.out.find("accepted=1") != std::string::npos);
    CHECK(a.out.find("edges_per_vertex=") != std::string::npos);
    CHECK(slurp(tmpdir() / "e1.csv") == slurp(tmpdir() / "e2.csv"));
    CHECK(slurp(tmpdir() / "t1.csv") == slurp(tmpdir() / "t2.csv"));
    CHECK(slurp(tmpdir() / "e1.csv").rfind("src,dst,date\n", 0) == 0);
    CHECK(slurp(tmpdir() / "t1.csv").rfind("node,z_true\n", 0) == 0);

    const auto c = run("simulate --density 0.5 --seed 7 --rewire-fraction 0 --out-edges " + p("e3.csv") +
                       " --out-truth " + p("t3.csv"));
    REQUIRE(c.code == 0);
    CHECK(slurp(tmpdir() / "e1.csv") == slurp(tmpdir() / "e3.csv"));
}

TEST_CASE("simulate rejects invalid densities") {
    CHECK(run("simulate --density 1.5 --out-edges " + p("x.csv") + " --out-truth " + p("y.csv")).code == 2);
    CHECK(run("simulate --density 0 --out-edges " + p("x.csv") + " --out-truth " + p("y.csv")).code == 2);
    CHECK(run("simulate --date-model sideways --density 0.3 --out-edges " + p("x.csv") + " --out-truth " +
              p("y.csv"))
              .code == 1);
}

TEST_CASE("uniform date model keeps dates inside the endpoint interval") {
    REQUIRE(run("simulate --density 0.3 --seed 3 --date-model uniform --out-edges " + p("ue.csv") +
                " --out-truth " + p("ut.csv"))
                .code == 0);
    std::istringstream truth(slurp(tmpdir() / "ut.csv"));
    std::string line;
    std::getline(truth, line);
    std::vector<double> z;
    while (std::getline(truth, line))
        z.push_back(std::stod(line.substr(line.find(',') + 1)));
    std::istringstream edges(slurp(tmpdir() / "ue.csv"));
    std::getline(edges, line);
    std::size_t rows = 0;
    while (std::getline(edges, line)) {
        std::size_t u = 0, v = 0;
        double d = 0.0;
        char c1, c2;
        std::istringstream row(line);
        row >> u >> c1 >> v >> c2 >> d;
        CHECK(d >= std::min(z.at(u), z.at(v)));
        CHECK(d <= std::max(z.at(u), z.at(v)));
        ++rows;
    }
    CHECK(rows > 0);
}

TEST_CASE("estimate on a two-vertex input") {
    {
        std::ofstream f(tmpdir() / "two.csv");
        f << "src,dst,date\n0,1,1300\n";
    }
    {
        std::ofstream f(tmpdir() / "path.csv");
        f << "src,dst,date\n0,1,1300\n1,2,1320\n";
    }
    const auto r = run("estimate --input " + p("path.csv") + " --output " + p("est.csv") + " --trace " +
                       p("trace.csv"));
    REQUIRE(r.code == 0);
    // fewer edges than parameters: estimates are written, convergence is not expected
    CHECK(r.out.find("log_likelihood=") != std::string::npos);
    const std::string est = slurp(tmpdir() / "est.csv");
    CHECK(est.rfind("node,z_local,z_model\n0,1300,", 0) == 0);
    CHECK(count_lines(est) == 4);
    CHECK(slurp(tmpdir() / "trace.csv").rfind("iteration,log_likelihood\n0,", 0) == 0);

    const auto two = run("estimate --input " + p("two.csv") + " --output " + p("est2.csv"));
    REQUIRE(two.code == 0);
    CHECK(count_lines(slurp(tmpdir() / "est2.csv")) == 3);
    CHECK(two.out.find("stop=degenerate warning=not_converged") != std::string::npos);
}

TEST_CASE("estimate with tol 1e-8 matches the defaults") {
    REQUIRE(run("simulate --density 0.3 --seed 11 --out-edges " + p("s.csv") + " --out-truth " + p("st.csv")).code ==
            0);
    const auto a = run("estimate --input " + p("s.csv") + " --output " + p("ea.csv"));
    const auto b = run("estimate --input " + p("s.csv") + " --output " + p("eb.csv") + " --tol 1e-8");
    REQUIRE(a.code == 0);
    REQUIRE(b.code == 0);
    CHECK(a.out.find("converged=1 stop=tolerance") != std::string::npos);
    CHECK(a.out == b.out);
    CHECK(slurp(tmpdir() / "ea.csv") == slurp(tmpdir() / "eb.csv"));
}

TEST_CASE("non-convergence warns, and fails only under --strict") {
    const auto warn = run("estimate --input " + p("s.csv") + " --output " + p("ew.csv") + " --max-iter 2");
    CHECK(warn.code == 0);
    CHECK(warn.out.find("converged=0") != std::string::npos);
    CHECK(warn.out.find("warning=not_converged") != std::string::npos);
    CHECK(count_lines(slurp(tmpdir() / "ew.csv")) > 1);
    const auto strict = run("estimate --input " + p("s.csv") + " --output " + p("es.csv") + " --max-iter 2 --strict");
    CHECK(strict.code == 3);
}

TEST_CASE("input errors") {
    const auto missing = run("estimate --input /nonexistent/edges.csv --output " + p("o.csv"));
    CHECK(missing.code == 2);
    CHECK(missing.err.find("/nonexistent/edges.csv") != std::string::npos);
    {
        std::ofstream f(tmpdir() / "loop.csv");
        f << "src,dst,date\n3,3,1300\n";
    }
    const auto loop = run("estimate --input " + p("loop.csv") + " --output " + p("o.csv"));
    CHECK(loop.code == 2);
    CHECK(loop.err.find("line 2") != std::string::npos);
    CHECK(run("estimate --output " + p("o.csv")).code == 1);
    CHECK(run("frobnicate").code == 1);
}

TEST_CASE("experiment with one replicate") {
    const auto r = run("experiment --scenario ideal --replicates 1 --seed-base 3 --records " + p("rec.csv") +
                       " --curve " + p("curve.csv"));
    REQUIRE(r.code == 0);
    CHECK(r.out.find("replicates=1") != std::string::npos);
    const std::string rec = slurp(tmpdir() / "rec.csv");
    CHECK(count_lines(rec) == 2);
    CHECK(rec.rfind("scenario,rewire_fraction,target_density,seed,n_lcc,edges,edges_per_vertex,mse_local,mse_model,"
                    "improvement,converged,accepted\nideal,0,",
                    0) == 0);
}

TEST_CASE("experiment output does not depend on the thread count") {
    const std::string common = "experiment --scenario rewired --rewire-fraction 0.05 --replicates 6 --seed-base 9 ";
    const auto a = run(common + "--threads 1 --records " + p("ra.csv") + " --curve " + p("ca.csv"));
    const auto b = run(common + "--threads 3 --records " + p("rb.csv") + " --curve " + p("cb.csv"));
    REQUIRE(a.code == 0);
    REQUIRE(b.code == 0);
    CHECK(a.out == b.out);
    CHECK(slurp(tmpdir() / "ra.csv") == slurp(tmpdir() / "rb.csv"));
    CHECK(slurp(tmpdir() / "ca.csv") == slurp(tmpdir() / "cb.csv"));
    CHECK(slurp(tmpdir() / "ca.csv").rfind("edges_per_vertex,smoothed_improvement\n", 0) == 0);
}
