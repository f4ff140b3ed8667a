#include "cli.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <ostream>

#include "matgeom/errors.hpp"
#include "matgeom/grassmann.hpp"
#include "matgeom/io.hpp"
#include "matgeom/preserver.hpp"
#include "matgeom/random.hpp"
#include "matgeom/witness.hpp"

namespace matgeom::cli {

namespace {

constexpr std::uint64_t kPairBudget = 100'000'000;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Options {
    int q = 3;
    int m = 2;
    int n = 2;
    std::string mode = "exhaustive";
    std::uint64_t samples = 10'000;
    std::uint64_t seed = 0;
    std::uint64_t budget = kDefaultBudget;
    std::string out;
    std::string truth;
    std::string table;
    bool allow_transpose = true;
};

void add_shape(CLI::App* sub, Options& o) {
    sub->add_option("--field,-q", o.q, "field order (2, 3, 4, 5, 7, 8, 9)");
    sub->add_option("--rows,-m", o.m, "row count m");
    sub->add_option("--cols,-n", o.n, "column count n");
    sub->add_option("--budget", o.budget, "maximum number of matrices enumerated");
}

void add_mode(CLI::App* sub, Options& o) {
    sub->add_option("--mode", o.mode, "exhaustive or sampled")->check(CLI::IsMember({"exhaustive", "sampled"}));
    sub->add_option("--samples", o.samples, "samples drawn in sampled mode");
    sub->add_option("--seed", o.seed, "64-bit seed for sampled paths");
}

Json matrix_payload(const Matrix& a) { return to_text(a); }

Json shape_params(const Options& o) {
    Json p;
    p["field"] = o.q;
    p["rows"] = o.m;
    p["cols"] = o.n;
    return p;
}

SpaceSpec make_space(const Options& o) {
    if (o.m < 1 || o.n < 1) throw UsageError("rows and cols must be positive");
    try {
        return {Field::make(o.q), o.m, o.n};
    } catch (const PreconditionError& e) {
        throw UsageError(e.what());
    }
}

void require_hypotheses(const SpaceSpec& spec) {
    try {
        require_preserver_hypotheses(spec);
    } catch (const PreconditionError& e) {
        throw UsageError(std::string("hypothesis violated: ") + e.what() + " (requires |F| >= 3 and m >= n >= 2)");
    }
}

MatrixSpace make_matrix_space(const SpaceSpec& spec, std::uint64_t budget) {
    try {
        return MatrixSpace(spec, budget);
    } catch (const BudgetExceeded& e) {
        throw UsageError(e.what());
    }
}

// ---- verify-prop22 -------------------------------------------------------

bool cmd_verify_prop22(const Options& o, Json& rep) {
    const SpaceSpec spec = make_space(o);
    require_hypotheses(spec);
    const MatrixSpace space = make_matrix_space(spec, o.budget);
    const std::uint32_t N = space.size();
    rep["parameters"] = shape_params(o);
    rep["parameters"]["mode"] = o.mode;
    rep["parameters"]["samples"] = o.samples;
    rep["parameters"]["seed"] = o.seed;
    rep["parameters"]["budget"] = o.budget;
    bool ok = true;

    // Forward direction: every adjacent pair gets a verified witness.
    {
        std::uint64_t pairs = 0, failures = 0;
        Json cex;
        for (std::uint32_t a = 0; a < N; ++a)
            for (std::uint32_t b = 0; b < N; ++b) {
                if (!space.adjacent(a, b)) continue;
                ++pairs;
                const auto w = adjacency_witness(space, space.decode(a), space.decode(b));
                if (!w.verified) {
                    if (failures++ == 0)
                        cex = {{"A", matrix_payload(space.decode(a))},
                               {"B", matrix_payload(space.decode(b))},
                               {"R", matrix_payload(w.R)},
                               {"X", matrix_payload(*w.counterexample)}};
                }
            }
        Json fwd{{"adjacent_pairs", pairs}, {"failures", failures}};
        if (failures) fwd["counterexample"] = cex;
        rep["forward"] = fwd;
        ok = ok && failures == 0;
    }

    // Converse: separating X for every (or sampled) non-adjacent triple.
    {
        std::vector<std::uint32_t> far;  // matrices of rank >= 2
        for (std::uint32_t i = 0; i < N; ++i)
            if (space.rank(i) >= 2) far.push_back(i);
        const std::uint64_t triples = std::uint64_t{N} * far.size() * (N - 2);
        const bool exhaustive = o.mode == "exhaustive" && triples <= o.budget;
        std::uint64_t checked = 0, failures = 0;
        Json cex;
        auto check = [&](std::uint32_t a, std::uint32_t b, std::uint32_t r) {
            ++checked;
            const Matrix A = space.decode(a), B = space.decode(b), R = space.decode(r);
            const Matrix X = separating_X(A, B, R);
            const bool good = is_dis(X, R) && !is_dis(X, A) && !is_dis(X, B);
            if (!good && failures++ == 0)
                cex = {{"A", matrix_payload(A)}, {"B", matrix_payload(B)}, {"R", matrix_payload(R)}, {"X", matrix_payload(X)}};
        };
        if (exhaustive) {
            for (std::uint32_t a = 0; a < N; ++a)
                for (std::uint32_t d : far) {
                    // b = a + d ranges over all b with rank(b - a) >= 2
                    const std::uint32_t b = space.difference(a, space.difference(0, d));
                    for (std::uint32_t r = 0; r < N; ++r)
                        if (r != a && r != b) check(a, b, r);
                }
        } else {
            Rng rng(o.seed);
            for (std::uint64_t s = 0; s < o.samples && !far.empty(); ++s) {
                const auto a = static_cast<std::uint32_t>(rng.below(N));
                const std::uint32_t d = far[rng.below(far.size())];
                const std::uint32_t b = space.difference(a, space.difference(0, d));
                std::uint32_t r;
                do {
                    r = static_cast<std::uint32_t>(rng.below(N));
                } while (r == a || r == b);
                check(a, b, r);
            }
        }
        Json conv{{"mode", exhaustive ? "exhaustive" : "sampled"}, {"triples_checked", checked}, {"failures", failures}};
        if (!exhaustive && o.mode == "exhaustive") conv["note"] = "triple count exceeds budget; sampled instead";
        if (failures) conv["counterexample"] = cex;
        rep["converse"] = conv;
        ok = ok && failures == 0;
    }

    // Literal evaluation of the dis-only condition on small spaces.
    if (N <= 100) {
        std::uint64_t pairs = 0, mismatches = 0;
        Json cex;
        for (std::uint32_t a = 0; a < N; ++a)
            for (std::uint32_t b = 0; b < N; ++b) {
                if (a == b) continue;
                ++pairs;
                const bool via = adjacent_via_dis(space, a, b);
                if (via != space.adjacent(a, b) && mismatches++ == 0)
                    cex = {{"A", matrix_payload(space.decode(a))}, {"B", matrix_payload(space.decode(b))},
                           {"adjacent", space.adjacent(a, b)}, {"adjacent_via_dis", via}};
            }
        Json eq{{"pairs", pairs}, {"mismatches", mismatches}};
        if (mismatches) eq["counterexample"] = cex;
        rep["equivalence"] = eq;
        ok = ok && mismatches == 0;
    } else {
        rep["equivalence"] = {{"skipped", "space has more than 100 matrices"}};
    }
    return ok;
}

// ---- certify / decompose -------------------------------------------------

MapTable load_table(const std::string& path) {
    try {
        return read_table_file(path);
    } catch (const ParseError& e) {
        throw UsageError(e.what());
    }
}

Json certificate_payload(const Certificate& cert, const MapTable& phi) {
    Json c{{"preserving", cert.preserving}, {"mode", to_string(cert.mode)}, {"pairs_checked", cert.pairs_checked}};
    if (cert.counterexample) {
        const auto& [A, B] = *cert.counterexample;
        const Matrix PA = phi.map(A), PB = phi.map(B);
        c["counterexample"] = {{"A", matrix_payload(A)},       {"B", matrix_payload(B)},
                               {"phi_A", matrix_payload(PA)},  {"phi_B", matrix_payload(PB)},
                               {"A_dis_B", is_dis(A, B)},      {"phiA_dis_phiB", is_dis(PA, PB)}};
    }
    return c;
}

bool cmd_certify(const Options& o, Json& rep) {
    const MapTable phi = load_table(o.table);
    const MatrixSpace space = make_matrix_space(phi.spec(), std::max<std::uint64_t>(o.budget, phi.size()));
    rep["parameters"] = {{"table", o.table},
                         {"field", phi.spec().q()},
                         {"rows", phi.spec().m},
                         {"cols", phi.spec().n},
                         {"mode", o.mode},
                         {"samples", o.samples},
                         {"seed", o.seed}};
    const auto mode = o.mode == "sampled" ? CertifyMode::sampled : CertifyMode::exhaustive;
    const Certificate cert = certify_dis(space, phi, mode, o.samples, o.seed);
    rep["certificate"] = certificate_payload(cert, phi);
    rep["guarantee"] = mode == CertifyMode::exhaustive
                           ? "exhaustive: verdict is conclusive in both directions"
                           : "sampled: only a failing verdict is conclusive";
    return cert.preserving;
}

bool cmd_decompose(const Options& o, Json& rep) {
    const MapTable phi = load_table(o.table);
    rep["parameters"] = {{"table", o.table}, {"field", phi.spec().q()}, {"rows", phi.spec().m}, {"cols", phi.spec().n}};
    require_hypotheses(phi.spec());
    const MatrixSpace space = make_matrix_space(phi.spec(), std::max<std::uint64_t>(o.budget, phi.size()));
    const Certificate cert = certify_dis(space, phi);
    rep["certificate"] = certificate_payload(cert, phi);
    if (!cert.preserving) return false;
    try {
        const StandardPreserver f = decompose(phi);
        const Json doc = to_json(f);
        rep["decomposition"] = doc;
        if (!o.out.empty()) {
            std::ofstream os(o.out);
            if (!os) throw UsageError("cannot write " + o.out);
            os << doc.dump(2) << '\n';
        }
        return true;
    } catch (const DecomposeError& e) {
        rep["decomposition_error"] = {{"step", to_string(e.step())}, {"message", e.what()}};
        return false;
    }
}

// ---- generate ------------------------------------------------------------

bool cmd_generate(const Options& o, Json& rep) {
    const SpaceSpec spec = make_space(o);
    require_hypotheses(spec);
    if (o.out.empty()) throw UsageError("generate requires --out");
    if (spec.size() > o.budget) throw UsageError("space exceeds budget");
    const StandardPreserver f = random_preserver(spec, o.seed, o.allow_transpose);
    const std::string truth = o.truth.empty() ? o.out + ".truth.json" : o.truth;
    write_table_file(o.out, to_table(f, o.budget));
    {
        std::ofstream os(truth);
        if (!os) throw UsageError("cannot write " + truth);
        os << to_json(f).dump(2) << '\n';
    }
    rep["parameters"] = shape_params(o);
    rep["parameters"]["seed"] = o.seed;
    rep["parameters"]["allow_transpose"] = o.allow_transpose;
    rep["table_file"] = o.out;
    rep["truth_file"] = truth;
    rep["ground_truth"] = to_json(f);
    return true;
}

// ---- grassmann -----------------------------------------------------------

bool cmd_grassmann(const Options& o, Json& rep) {
    if (o.m < 1 || o.n < 1) throw UsageError("grassmann requires m >= 1 and n >= 1");
    FieldPtr field;
    try {
        field = Field::make(o.q);
    } catch (const PreconditionError& e) {
        throw UsageError(e.what());
    }
    const GrassmannSpec gs{field, o.m, o.n};
    rep["parameters"] = shape_params(o);
    rep["parameters"]["budget"] = o.budget;
    rep["block_convention"] = "[X Y]: X left m x n block, Y right m x m block";
    if (gs.point_count() > o.budget) throw UsageError("grassmann space exceeds budget");
    const auto points = enumerate_points(gs, o.budget);

    std::vector<const GrassmannPoint*> finite;
    for (const auto& p : points)
        if (!is_at_infinity(p)) finite.push_back(&p);
    const std::uint64_t total = points.size();
    const std::uint64_t n_finite = finite.size();
    const SpaceSpec ms{field, o.m, o.n};
    bool ok = true;

    Json counts{{"total", total}, {"finite", n_finite}, {"at_infinity", total - n_finite}};
    counts["expected_total"] = gs.point_count();
    counts["expected_finite"] = ms.size();
    ok = ok && total == gs.point_count() && n_finite == ms.size();
    rep["counts"] = counts;

    std::uint64_t roundtrip_failures = 0;
    for (const auto* p : finite)
        if (!(from_matrix(to_matrix(*p)) == *p)) ++roundtrip_failures;
    rep["roundtrip_failures"] = roundtrip_failures;
    ok = ok && roundtrip_failures == 0;

    std::uint64_t pairs = 0, adj_mismatch = 0, comp_mismatch = 0;
    Json cex;
    const bool square = o.m == o.n;
    if (n_finite * n_finite <= kPairBudget) {
        std::vector<Matrix> mats;
        for (const auto* p : finite) mats.push_back(to_matrix(*p));
        for (std::size_t i = 0; i < finite.size(); ++i)
            for (std::size_t j = 0; j < finite.size(); ++j) {
                ++pairs;
                if (is_adjacent_points(*finite[i], *finite[j]) != is_adjacent(mats[i], mats[j]) && adj_mismatch++ == 0)
                    cex["adjacency"] = {{"U", to_text(*finite[i])}, {"V", to_text(*finite[j])}};
                if (square && is_complementary(*finite[i], *finite[j]) != is_dis(mats[i], mats[j]) && comp_mismatch++ == 0)
                    cex["complementarity"] = {{"U", to_text(*finite[i])}, {"V", to_text(*finite[j])}};
            }
        Json corr{{"pairs", pairs}, {"adjacency_mismatches", adj_mismatch}};
        if (square) corr["complementarity_mismatches"] = comp_mismatch;
        else corr["complementarity"] = "skipped: requires m == n";
        if (!cex.empty()) corr["counterexample"] = cex;
        rep["correspondence"] = corr;
        ok = ok && adj_mismatch == 0 && comp_mismatch == 0;
    } else {
        rep["correspondence"] = {{"skipped", "pair count exceeds budget"}};
    }
    return ok;
}

// ---- count ---------------------------------------------------------------

bool cmd_count(const Options& o, Json& rep) {
    const SpaceSpec spec = make_space(o);
    const MatrixSpace space = make_matrix_space(spec, o.budget);
    rep["parameters"] = shape_params(o);
    rep["parameters"]["budget"] = o.budget;
    const int rmax = std::min(o.m, o.n);
    std::vector<std::uint64_t> formula(rmax + 1), brute(rmax + 1, 0);
    for (int r = 0; r <= rmax; ++r) formula[r] = count_by_rank(spec, r);
    for (std::uint32_t i = 0; i < space.size(); ++i) ++brute[space.rank(i)];
    std::uint64_t sum = 0;
    for (auto v : formula) sum += v;
    rep["ranks"] = Json::array();
    for (int r = 0; r <= rmax; ++r) rep["ranks"].push_back(r);
    rep["counts"] = formula;
    rep["enumerated"] = brute;
    rep["total"] = sum;
    return formula == brute && sum == space.size();
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Finite-field matrix geometry: adjacency, full-rank differences and their preservers", "matgeom"};
    app.require_subcommand(1);
    Options o;

    auto* verify = app.add_subcommand("verify-prop22", "check adjacency <=> dis-witness equivalence exhaustively");
    add_shape(verify, o);
    add_mode(verify, o);

    auto* certify = app.add_subcommand("certify", "check that a table preserves dis in both directions");
    certify->add_option("table", o.table, "table file")->required();
    add_mode(certify, o);
    certify->add_option("--budget", o.budget, "maximum number of matrices enumerated");

    auto* decomp = app.add_subcommand("decompose", "certify a table and recover T, S, R, sigma, transposed");
    decomp->add_option("table", o.table, "table file")->required();
    decomp->add_option("--out", o.out, "write the decomposition document here");
    decomp->add_option("--budget", o.budget, "maximum number of matrices enumerated");

    auto* gen = app.add_subcommand("generate", "write the table of a random standard preserver");
    add_shape(gen, o);
    gen->add_option("--seed", o.seed, "64-bit seed");
    gen->add_option("--out", o.out, "table file to write")->required();
    gen->add_option("--truth", o.truth, "ground-truth decomposition (default: OUT.truth.json)");
    gen->add_flag("--allow-transpose,!--no-transpose", o.allow_transpose, "allow the transposed form when m == n");

    auto* grass = app.add_subcommand("grassmann", "check the Grassmann / matrix-space correspondence");
    add_shape(grass, o);

    auto* count = app.add_subcommand("count", "rank distribution of M_{m,n}(GF(q))");
    add_shape(count, o);

    std::vector<std::string> argv_rev(args.rbegin(), args.rend());
    try {
        app.parse(argv_rev);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    CLI::App* sub = app.get_subcommands().front();
    Json rep;
    rep["command"] = sub->get_name();
    const auto start = std::chrono::steady_clock::now();
    int code = 0;
    try {
        bool ok = false;
        if (sub == verify) ok = cmd_verify_prop22(o, rep);
        else if (sub == certify) ok = cmd_certify(o, rep);
        else if (sub == decomp) ok = cmd_decompose(o, rep);
        else if (sub == gen) ok = cmd_generate(o, rep);
        else if (sub == grass) ok = cmd_grassmann(o, rep);
        else if (sub == count) ok = cmd_count(o, rep);
        rep["outcome"] = ok ? "pass" : "fail";
        code = ok ? 0 : 1;
    } catch (const UsageError& e) {
        rep["outcome"] = "error";
        rep["message"] = e.what();
        err << "matgeom: " << e.what() << '\n';
        code = 2;
    }
    const auto elapsed = std::chrono::steady_clock::now() - start;
    rep["timing_ms"] = std::chrono::duration_cast<std::chrono::milliseconds>(elapsed).count();
    out << rep.dump(2) << '\n';
    return code;
}

}  // namespace matgeom::cli
