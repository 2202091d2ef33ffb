#include "fsa/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <future>
#include <set>
#include <sstream>

#include "fsa/cohomology.hpp"
#include "fsa/derivations.hpp"
#include "fsa/operators.hpp"
#include "fsa/random.hpp"
#include "fsa/series.hpp"
#include "fsa/word.hpp"

namespace fsa {

void RunConfig::validate() const {
    if (alphabet == 0) throw ConfigError("alphabet size must be at least 1");
    if (!(tol > 0.0) || !std::isfinite(tol)) throw ConfigError("tolerance must be positive");
    if (trials == 0) throw ConfigError("trials must be at least 1");
}

Json RunConfig::to_json() const {
    return {{"alphabet", alphabet}, {"max_len", max_len},   {"cutoff", cutoff},
            {"seed", seed},         {"tol", tol},           {"trials", trials},
            {"witness_cutoff", witness_cutoff}};
}

RunConfig RunConfig::from_json(const Json& j) {
    if (!j.is_object()) throw ConfigError("config must be a JSON object");
    RunConfig c;
    try {
        c.alphabet = j.value("alphabet", c.alphabet);
        c.max_len = j.value("max_len", c.max_len);
        c.cutoff = j.value("cutoff", c.cutoff);
        c.seed = j.value("seed", c.seed);
        c.tol = j.value("tol", c.tol);
        c.trials = j.value("trials", c.trials);
        c.witness_cutoff = j.value("witness_cutoff", c.witness_cutoff);
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("bad config field: ") + e.what());
    }
    c.validate();
    return c;
}

bool Report::passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; }) &&
           std::all_of(suites.begin(), suites.end(), [](const Report& r) { return r.passed(); });
}

Json Report::to_json(bool with_timing) const {
    Json j = {{"schema_version", kReportSchemaVersion},
              {"suite", suite},
              {"passed", passed()},
              {"config", config.to_json()}};
    if (!checks.empty() || suites.empty()) {
        Json cs = Json::array();
        for (const Check& c : checks) {
            Json cj = {{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}};
            if (!c.passed) cj["counterexample"] = c.counterexample;
            cs.push_back(std::move(cj));
        }
        j["checks"] = std::move(cs);
    }
    if (!suites.empty()) {
        Json ss = Json::array();
        for (const Report& r : suites) ss.push_back(r.to_json(with_timing));
        j["suites"] = std::move(ss);
    }
    if (with_timing) j["timing"] = {{"seconds", seconds}};
    return j;
}

namespace {

std::uint64_t name_salt(const std::string& name) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char ch : name) h = (h ^ ch) * 0x100000001b3ULL;
    return h;
}

struct CheckContext {
    Rng rng;
    bool failed = false;
    std::string detail;
    Json inputs;

    void fail(std::string why, Json in) {
        if (failed) return;
        failed = true;
        detail = std::move(why);
        inputs = std::move(in);
    }
};

// Runs each check with its own generator, seeded from the config seed and the
// check name, so that a check's inputs do not depend on the others.
class SuiteRecorder {
public:
    SuiteRecorder(std::string suite, const RunConfig& config) {
        report_.suite = std::move(suite);
        report_.config = config;
        start_ = std::chrono::steady_clock::now();
    }

    void run(const std::string& name, const std::function<void(CheckContext&)>& body) {
        std::seed_seq seq{static_cast<std::uint32_t>(report_.config.seed),
                          static_cast<std::uint32_t>(report_.config.seed >> 32),
                          static_cast<std::uint32_t>(name_salt(name)),
                          static_cast<std::uint32_t>(name_salt(name) >> 32)};
        CheckContext ctx;
        ctx.rng.seed(seq);
        try {
            body(ctx);
        } catch (const std::exception& e) {
            ctx.fail(std::string("unexpected exception: ") + e.what(), ctx.inputs.is_null() ? Json::object() : ctx.inputs);
        }
        Check check{name, !ctx.failed, ctx.detail, nullptr};
        if (ctx.failed) {
            check.counterexample = {{"suite", report_.suite},
                                    {"check", name},
                                    {"seed", report_.config.seed},
                                    {"config", report_.config.to_json()},
                                    {"inputs", ctx.inputs}};
        }
        report_.checks.push_back(std::move(check));
    }

    Report finish() {
        report_.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
        return std::move(report_);
    }

private:
    Report report_;
    std::chrono::steady_clock::time_point start_;
};

Json words_json(std::initializer_list<std::pair<const char*, const Word*>> named) {
    Json j = Json::object();
    for (const auto& [key, w] : named) j[key] = to_string(*w);
    return j;
}

std::string count_detail(std::size_t count, const char* what) {
    return std::to_string(count) + " " + what;
}

// Largest length whose word count stays below the limit.
std::size_t capped_length(Alphabet alphabet, std::size_t wanted, std::size_t limit) {
    std::size_t len = 0;
    std::size_t total = 1;
    std::size_t layer = 1;
    while (len < wanted) {
        layer *= alphabet.size();
        if (total + layer > limit) break;
        total += layer;
        ++len;
    }
    return len;
}

std::size_t basis_dimension(std::size_t m, std::size_t n) {
    std::size_t total = 0;
    std::size_t layer = 1;
    for (std::size_t k = 0; k <= n; ++k) {
        total += layer;
        if (total > kDimensionCap) return total;
        layer *= m;
    }
    return total;
}

}  // namespace

Report verify_words(const RunConfig& config) {
    config.validate();
    const Alphabet alphabet(config.alphabet);
    SuiteRecorder rec("words", config);

    rec.run("enumeration-order", [&](CheckContext& ctx) {
        const std::size_t len = capped_length(alphabet, config.max_len, 200000);
        const auto words = enumerate_words(alphabet, len);
        std::size_t expected = 0;
        std::size_t layer = 1;
        for (std::size_t k = 0; k <= len; ++k, layer *= alphabet.size()) expected += layer;
        if (words.size() != expected) {
            ctx.fail("word count " + std::to_string(words.size()) + " != " + std::to_string(expected),
                     {{"max_len", len}});
            return;
        }
        for (std::size_t i = 1; i < words.size(); ++i) {
            if (!(words[i - 1] < words[i])) {
                ctx.fail("enumeration not increasing", words_json({{"before", &words[i - 1]}, {"after", &words[i]}}));
                return;
            }
        }
        ctx.detail = count_detail(words.size(), "words in increasing order");
    });

    rec.run("power-cancellation", [&](CheckContext& ctx) {
        const std::size_t wlen = std::min<std::size_t>(3, config.max_len);
        const std::size_t ulen = std::min<std::size_t>(4, std::max(config.max_len, wlen));
        const auto ws = enumerate_words(alphabet, capped_length(alphabet, wlen, 2000));
        const auto us = enumerate_words(alphabet, capped_length(alphabet, ulen, 2000));
        std::size_t instances = 0;
        std::size_t satisfied = 0;
        for (const Word& w : ws) {
            if (w.is_unit()) continue;
            for (const Word& u : us) {
                const std::size_t k_lo = cancellation_min_power(w, u);
                const std::size_t k_hi = (u.length() + w.length() - 1) / w.length() + 2;
                for (std::size_t k = k_lo; k <= k_hi; ++k) {
                    const Word wk = power(w, k);
                    // v w^k = w^k u forces |v| = |u|, so v ranges over one layer.
                    for (const Word& v : enumerate_words_of_length(alphabet, u.length())) {
                        ++instances;
                        if (concat(v, wk) == concat(wk, u)) ++satisfied;
                        if (!power_cancellation_holds(w, u, v, k)) {
                            Json in = words_json({{"w", &w}, {"u", &u}, {"v", &v}});
                            in["k"] = k;
                            ctx.fail("implication fails", in);
                            return;
                        }
                    }
                }
            }
        }
        ctx.detail = count_detail(instances, "instances") + ", hypothesis held in " + std::to_string(satisfied);
    });

    rec.run("cancellation", [&](CheckContext& ctx) {
        const auto words = enumerate_words(alphabet, capped_length(alphabet, std::min<std::size_t>(5, config.max_len), 64));
        std::size_t n = 0;
        for (const Word& u : words) {
            for (const Word& v : words) {
                const Word uv = concat(u, v);
                const Word vu = concat(v, u);
                for (const Word& v2 : words) {
                    ++n;
                    if ((uv == concat(u, v2) || vu == concat(v2, u)) && v != v2) {
                        ctx.fail("cancellation fails", words_json({{"u", &u}, {"v", &v}, {"v2", &v2}}));
                        return;
                    }
                }
            }
        }
        ctx.detail = count_detail(n, "triples");
    });

    rec.run("order-compatibility", [&](CheckContext& ctx) {
        for (std::size_t i = 0; i < config.trials; ++i) {
            const Word u = random_word(ctx.rng, alphabet, config.max_len);
            const Word v = random_word(ctx.rng, alphabet, config.max_len);
            const Word w = random_word(ctx.rng, alphabet, config.max_len);
            const auto uv = compare(u, v);
            const bool total = (uv == 0) == (u == v) && ((uv < 0) == (compare(v, u) > 0));
            const bool left = uv >= 0 || compare(concat(w, u), concat(w, v)) < 0;
            const bool right = uv >= 0 || compare(concat(u, w), concat(v, w)) < 0;
            const bool transitive = !(u < v && v < w) || u < w;
            if (!total || !left || !right || !transitive) {
                ctx.fail("order law fails", words_json({{"u", &u}, {"v", &v}, {"w", &w}}));
                return;
            }
        }
        ctx.detail = count_detail(config.trials, "random triples");
    });

    rec.run("min-word", [&](CheckContext& ctx) {
        const std::size_t runs = std::min<std::size_t>(config.trials, 1000);
        for (std::size_t i = 0; i < runs; ++i) {
            std::vector<Word> set;
            const std::size_t count = 1 + ctx.rng() % 8;
            for (std::size_t k = 0; k < count; ++k) set.push_back(random_word(ctx.rng, alphabet, config.max_len));
            const Word got = min_word(set);
            for (const Word& w : set) {
                if (w < got) {
                    Json in = Json::array();
                    for (const Word& s : set) in.push_back(to_string(s));
                    ctx.fail("min_word not least", {{"set", in}});
                    return;
                }
            }
        }
        ctx.detail = count_detail(runs, "random sets");
    });

    rec.run("divide-roundtrip", [&](CheckContext& ctx) {
        for (std::size_t i = 0; i < config.trials; ++i) {
            const Word u = random_word(ctx.rng, alphabet, config.max_len);
            const Word w = concat(u, random_word(ctx.rng, alphabet, config.max_len));
            const auto v = left_divide(u, w);
            const auto v2 = right_divide(u, concat(w, u));
            if (!v || concat(u, *v) != w || !v2 || *v2 != w) {
                ctx.fail("division does not invert concatenation", words_json({{"u", &u}, {"w", &w}}));
                return;
            }
        }
        ctx.detail = count_detail(config.trials, "random pairs");
    });

    rec.run("primitive-root-commutes", [&](CheckContext& ctx) {
        const auto words =
            enumerate_words(alphabet, capped_length(alphabet, std::min<std::size_t>(6, config.max_len), 1500));
        std::size_t pairs = 0;
        for (const Word& u : words) {
            if (u.is_unit()) continue;
            const auto ru = primitive_root(u);
            if (power(ru.root, ru.exponent) != u || primitive_root(ru.root).exponent != 1) {
                ctx.fail("primitive root does not factor the word", words_json({{"u", &u}}));
                return;
            }
            for (const Word& w : words) {
                if (w.is_unit()) continue;
                ++pairs;
                if (commutes(u, w) != (ru.root == primitive_root(w).root)) {
                    ctx.fail("commutation and common root disagree", words_json({{"u", &u}, {"w", &w}}));
                    return;
                }
            }
        }
        ctx.detail = count_detail(pairs, "pairs");
    });

    rec.run("conjugate-transport", [&](CheckContext& ctx) {
        const auto words =
            enumerate_words(alphabet, capped_length(alphabet, std::min<std::size_t>(4, config.max_len), 200));
        std::size_t hits = 0;
        for (const Word& w : words) {
            for (const Word& u : words) {
                const auto v = conjugate_transport(w, u);
                const Word uw = concat(u, w);
                std::size_t solutions = 0;
                for (const Word& cand : enumerate_words_of_length(alphabet, u.length())) {
                    if (concat(w, cand) == uw) ++solutions;
                }
                const bool ok = v ? (concat(w, *v) == uw && solutions == 1) : solutions == 0;
                if (!ok) {
                    ctx.fail("transport disagrees with exhaustive search", words_json({{"w", &w}, {"u", &u}}));
                    return;
                }
                hits += v.has_value();
            }
        }
        ctx.detail = count_detail(hits, "transportable pairs");
    });

    return rec.finish();
}

Report verify_operators(const RunConfig& config) {
    config.validate();
    const std::size_t dim = basis_dimension(config.alphabet, config.cutoff);
    if (dim > kDimensionCap) {
        throw ConfigError("truncation has more than " + std::to_string(kDimensionCap) + " basis words");
    }
    const Alphabet alphabet(config.alphabet);
    const std::size_t n = config.cutoff;
    const auto basis = TruncationBasis::make(alphabet, n);
    const std::size_t op_trials = std::min<std::size_t>(config.trials, 100);
    constexpr double kNormSlack = 1e-6;
    SuiteRecorder rec("operators", config);

    rec.run("isometry-relations", [&](CheckContext& ctx) {
        if (n == 0) {
            ctx.detail = "degenerate: only e";
            return;
        }
        const IsometryReport r = isometry_relations_check(basis, config.tol);
        if (!r.passed()) {
            ctx.fail("max deviation " + std::to_string(r.max_deviation), {{"cutoff", n}});
            return;
        }
        ctx.detail = "dimension " + std::to_string(dim);
    });

    rec.run("commutant", [&](CheckContext& ctx) {
        const auto small = enumerate_words(alphabet, std::min<std::size_t>(2, n));
        double worst = 0.0;
        for (const Word& u : small) {
            for (const Word& v : small) {
                if (u.length() + v.length() > n) continue;
                const bool exact = commutant_check(u, v, basis);
                const auto lu = left_matrix(u, basis);
                const auto rv = right_matrix(v, basis);
                const double dev = max_deviation_on_subspace(lu * rv, rv * lu, n - u.length() - v.length());
                worst = std::max(worst, dev);
                if (!exact || dev >= config.tol) {
                    Json in = words_json({{"u", &u}, {"v", &v}});
                    in["deviation"] = dev;
                    ctx.fail("left and right translations do not commute", in);
                    return;
                }
            }
        }
        ctx.detail = "max deviation " + std::to_string(worst);
    });

    rec.run("compression-product", [&](CheckContext& ctx) {
        const std::size_t runs = std::min<std::size_t>(config.trials, 200);
        for (std::size_t i = 0; i < runs; ++i) {
            const std::size_t half = n / 2;
            const Series phi = random_series(ctx.rng, alphabet, half, 4);
            const Series psi = random_series(ctx.rng, alphabet, n - half, 4);
            const std::size_t dp = phi.degree().value_or(0);
            const std::size_t dq = psi.degree().value_or(0);
            if (dp + dq > n) continue;
            const double dev = max_deviation_on_subspace(left_matrix(phi, basis) * left_matrix(psi, basis),
                                                         left_matrix(convolve(phi, psi), basis), n - dp - dq);
            if (dev > config.tol) {
                ctx.fail("product of compressions differs", {{"phi", to_json(phi)}, {"psi", to_json(psi)}});
                return;
            }
        }
        ctx.detail = count_detail(runs, "random pairs");
    });

    rec.run("phi-j-projections", [&](CheckContext& ctx) {
        const std::size_t runs = std::min<std::size_t>(op_trials, 20);
        const long top = static_cast<long>(n);
        for (std::size_t i = 0; i < runs; ++i) {
            const auto t = random_operator(ctx.rng, basis);
            for (long a = -top; a <= top; ++a) {
                const auto pa = phi_j_op(t, a);
                if (max_abs_entry(phi_j_op(pa, a) - pa) > config.tol) {
                    ctx.fail("Phi_j is not idempotent", {{"trial", i}, {"j", a}});
                    return;
                }
                for (long b = -top; b <= top; ++b) {
                    if (a != b && max_abs_entry(phi_j_op(pa, b)) > config.tol) {
                        ctx.fail("Phi_i Phi_j != 0", {{"trial", i}, {"i", b}, {"j", a}});
                        return;
                    }
                }
            }
        }
        ctx.detail = count_detail(runs, "random operators");
    });

    rec.run("phi-j-contractive", [&](CheckContext& ctx) {
        const long top = static_cast<long>(n);
        for (std::size_t i = 0; i < op_trials; ++i) {
            const auto t = random_operator(ctx.rng, basis);
            const double base = norm_estimate(t);
            for (long j = -top; j <= top; ++j) {
                const double pj = norm_estimate(phi_j_op(t, j));
                if (pj > base + kNormSlack) {
                    ctx.fail("||Phi_j(T)|| exceeds ||T||", {{"trial", i}, {"j", j}, {"norm", base}, {"projected", pj}});
                    return;
                }
            }
        }
        ctx.detail = count_detail(op_trials, "random operators");
    });

    rec.run("cesaro-contractive", [&](CheckContext& ctx) {
        for (std::size_t i = 0; i < op_trials; ++i) {
            const auto t = random_operator(ctx.rng, basis);
            const double base = norm_estimate(t);
            for (std::size_t k = 1; k <= n + 2; ++k) {
                const double ck = norm_estimate(cesaro_op(t, k));
                if (ck > base + kNormSlack) {
                    ctx.fail("||Sigma_k(T)|| exceeds ||T||", {{"trial", i}, {"k", k}, {"norm", base}, {"averaged", ck}});
                    return;
                }
            }
        }
        ctx.detail = count_detail(op_trials, "random operators");
    });

    rec.run("cesaro-vacuum-bound", [&](CheckContext& ctx) {
        const Vector xi_e = basis->to_vector(Series::unit(alphabet));
        const std::size_t runs = std::min<std::size_t>(config.trials, 200);
        for (std::size_t i = 0; i < runs; ++i) {
            const Series phi = random_series(ctx.rng, alphabet, n, 6);
            const auto lphi = left_matrix(phi, basis);
            const double deg = static_cast<double>(phi.degree().value_or(0));
            for (std::size_t k = 2; k <= 32; ++k) {
                const double err = (cesaro_op(lphi, k).apply(xi_e) - lphi.apply(xi_e)).norm();
                const double bound = deg / static_cast<double>(k) * l2_norm(phi);
                if (err > bound + 1e-12) {
                    ctx.fail("Cesaro error above (deg/k)||phi||", {{"phi", to_json(phi)}, {"k", k}, {"error", err}});
                    return;
                }
            }
        }
        ctx.detail = count_detail(runs, "random symbols, k in 2..32");
    });

    rec.run("conditional-expectation", [&](CheckContext& ctx) {
        for (std::size_t i = 0; i < config.trials; ++i) {
            const Series phi = random_series(ctx.rng, alphabet, 3, 4);
            const Series psi = random_series(ctx.rng, alphabet, 3, 4);
            LetterSet letters;
            for (Letter a = 0; a < alphabet.size(); ++a) {
                if (ctx.rng() % 2) letters.insert(a);
            }
            const Series lhs = conditional_expectation(convolve(phi, psi), letters);
            const Series rhs =
                convolve(conditional_expectation(phi, letters), conditional_expectation(psi, letters));
            const LetterSet all = letters_of(phi);
            if (!approx_equal(lhs, rhs, 0.0) || conditional_expectation(phi, all) != phi) {
                Json in = {{"phi", to_json(phi)}, {"psi", to_json(psi)}, {"letters", Json(letters)}};
                ctx.fail("E_I is not multiplicative or does not fix phi", in);
                return;
            }
        }
        ctx.detail = count_detail(config.trials, "random pairs");
    });

    rec.run("conjugation", [&](CheckContext& ctx) {
        const std::size_t runs = std::min<std::size_t>(config.trials, 200);
        std::size_t done = 0;
        for (std::size_t i = 0; i < runs; ++i) {
            const Word w = random_word(ctx.rng, alphabet, std::min<std::size_t>(2, n / 2), 1);
            if (2 * w.length() > n) continue;
            const std::size_t room = std::min<std::size_t>(3, n - 2 * w.length());
            const Series phi = random_series(ctx.rng, alphabet, room, 5);
            ++done;
            if (!conjugation_check(w, phi, basis, config.tol)) {
                ctx.fail("L_w^* L_phi L_w differs from L_Gamma", {{"w", to_string(w)}, {"phi", to_json(phi)}});
                return;
            }
        }
        ctx.detail = count_detail(done, "random instances");
    });

    rec.run("upsilon-bound", [&](CheckContext& ctx) {
        for (std::size_t i = 0; i < op_trials; ++i) {
            const Series phi = random_series(ctx.rng, alphabet, n, 6);
            const Letter a = static_cast<Letter>(ctx.rng() % alphabet.size());
            const double base = norm_estimate(left_matrix(phi, basis));
            const double cut = norm_estimate(left_matrix(upsilon(phi, a), basis));
            if (cut > 2.0 * base + kNormSlack) {
                ctx.fail("||Upsilon(L_phi)|| exceeds 2||L_phi||", {{"phi", to_json(phi)}, {"letter", a}});
                return;
            }
        }
        ctx.detail = count_detail(op_trials, "random symbols");
    });

    rec.run("upsilon-witness", [&](CheckContext& ctx) {
        const double flat = upsilon_norm_witness(0.0, config.witness_cutoff);
        const double ratio = upsilon_norm_witness(0.9, config.witness_cutoff);
        std::ostringstream os;
        os.precision(6);
        os << "c=0.9, N=" << config.witness_cutoff << ": ratio " << ratio << "; c=0: ratio " << flat;
        ctx.detail = os.str();
        if (ratio < 1.8 || ratio > 2.0 + kNormSlack || std::abs(flat - 1.0) > kNormSlack) {
            ctx.fail(ctx.detail, {{"c", 0.9}, {"cutoff", config.witness_cutoff}, {"ratio", ratio}});
        }
    });

    return rec.finish();
}

Report verify_derivations(const RunConfig& config) {
    config.validate();
    const Alphabet alphabet(config.alphabet);
    const std::size_t runs = std::min<std::size_t>(config.trials, 200);
    SuiteRecorder rec("derivations", config);

    auto random_symbol = [&](Rng& rng) {
        Series t = random_series(rng, alphabet, 3, 5);
        t.add_term(Word::unit(alphabet), -t.coefficient(Word::unit(alphabet)));
        return t;
    };

    rec.run("inner-recovery", [&](CheckContext& ctx) {
        for (std::size_t i = 0; i < runs; ++i) {
            const Series t = random_symbol(ctx.rng);
            const auto d = GeneratorDerivation::inner(t);
            const Series got = solve_global_t(d);
            if (!approx_equal(got, t, config.tol) || !approx_equal(GeneratorDerivation::inner(got), d, config.tol)) {
                ctx.fail("recovered T differs", {{"t", to_json(t)}, {"recovered", to_json(got)}});
                return;
            }
        }
        ctx.detail = count_detail(runs, "random symbols");
    });

    rec.run("stabilization-index", [&](CheckContext& ctx) {
        for (std::size_t i = 0; i < runs; ++i) {
            const Series t = random_symbol(ctx.rng);
            const auto d = GeneratorDerivation::inner(t);
            const Word w = random_word(ctx.rng, alphabet, 2, 1);
            const Series dw = extend_to_word(d, w);
            const std::size_t k = compute_s(d, w).stabilization_index;
            const std::size_t bound = dw.degree().value_or(0) / w.length() + 2;
            if (k > bound) {
                ctx.fail("S_w stabilized late", {{"t", to_json(t)}, {"w", to_string(w)}, {"index", k}});
                return;
            }
            const Series tw = solve_local_t(d, w);
            if (!approx_equal(inner_derivation(tw, Series::basis(w)), dw, config.tol)) {
                ctx.fail("local solution does not reproduce D(L_w)", {{"t", to_json(t)}, {"w", to_string(w)}});
                return;
            }
        }
        ctx.detail = count_detail(runs, "random (T, w)");
    });

    rec.run("leibniz-powers", [&](CheckContext& ctx) {
        for (std::size_t i = 0; i < runs; ++i) {
            const Series t = random_symbol(ctx.rng);
            const auto d = GeneratorDerivation::inner(t);
            const Word w = random_word(ctx.rng, alphabet, 2, 1);
            const std::size_t k = 1 + ctx.rng() % 3;
            if (!approx_equal(power_expand(d, w, k), extend_to_word(d, power(w, k)), config.tol)) {
                ctx.fail("D(L_w^k) expansion differs", {{"t", to_json(t)}, {"w", to_string(w)}, {"k", k}});
                return;
            }
        }
        ctx.detail = count_detail(runs, "random (T, w, k)");
    });

    rec.run("rejects-inconsistent", [&](CheckContext& ctx) {
        for (std::size_t i = 0; i < runs; ++i) {
            GeneratorDerivation d = GeneratorDerivation::inner(random_symbol(ctx.rng));
            const Letter a = static_cast<Letter>(ctx.rng() % alphabet.size());
            Series bad = d.value(a);
            bad.add_term(Word::unit(alphabet), 1.0);
            d.set_value(a, bad);
            try {
                (void)solve_global_t(d);
                ctx.fail("accepted a derivation with weight at e", {{"derivation", to_json(d)}});
                return;
            } catch (const InconsistentDerivation&) {
            }
        }
        ctx.detail = count_detail(runs, "perturbed derivations rejected");
    });

    rec.run("normal-approximation", [&](CheckContext& ctx) {
        for (std::size_t i = 0; i < runs; ++i) {
            const Series t = random_symbol(ctx.rng);
            const Series phi = random_series(ctx.rng, alphabet, 4, 5);
            const std::size_t k = 1 + ctx.rng() % 8;
            LetterSet letters;
            for (Letter a = 0; a < alphabet.size(); ++a) {
                if (ctx.rng() % 3) letters.insert(a);
            }
            const auto r = normal_approx_check(t, phi, k, letters);
            if (!r.passed()) {
                ctx.fail("normal approximation fails",
                         {{"t", to_json(t)}, {"phi", to_json(phi)}, {"k", k}, {"letters", Json(letters)}});
                return;
            }
        }
        ctx.detail = count_detail(runs, "random (T, phi, k, I)");
    });

    return rec.finish();
}

Report verify_cohomology(const RunConfig& config) {
    config.validate();
    const Alphabet alphabet(config.alphabet);
    const std::size_t runs = std::min<std::size_t>(config.trials, 200);
    SuiteRecorder rec("cohomology", config);

    rec.run("coboundary-squared", [&](CheckContext& ctx) {
        for (std::size_t arity = 0; arity <= 3; ++arity) {
            const std::size_t count = std::min<std::size_t>(runs, 50);
            for (std::size_t i = 0; i < count; ++i) {
                const Cochain phi = random_cochain(ctx.rng, alphabet, arity, 3, 4);
                const Cochain dd = coboundary(coboundary(phi));
                if (!dd.is_zero()) {
                    ctx.fail("coboundary of a coboundary is nonzero", {{"cochain", to_json(phi)}});
                    return;
                }
            }
        }
        ctx.detail = "arities 0..3";
    });

    rec.run("homotopy", [&](CheckContext& ctx) {
        std::size_t total = 0;
        for (std::size_t arity = 2; arity <= 4; ++arity) {
            const std::size_t count = arity == 4 ? std::min<std::size_t>(runs, 50) : runs;
            for (std::size_t i = 0; i < count; ++i) {
                const Cochain eta = random_cochain(ctx.rng, alphabet, arity - 1, 3, 4);
                const Cochain phi = coboundary(eta);
                if (!phi.is_zero() && !is_cocycle(phi)) {
                    ctx.fail("coboundary is not a cocycle", {{"eta", to_json(eta)}});
                    return;
                }
                if (phi.is_zero()) continue;
                const Cochain psi = homotopy(phi);
                if (!approx_equal(coboundary(psi), phi, 0.0)) {
                    ctx.fail("coboundary(homotopy(phi)) != phi", {{"eta", to_json(eta)}});
                    return;
                }
                ++total;
            }
        }
        ctx.detail = count_detail(total, "cocycles of arity 2..4");
    });

    rec.run("homotopy-upsilon-form", [&](CheckContext& ctx) {
        const std::size_t count = std::min<std::size_t>(runs, 20);
        std::size_t tuples = 0;
        for (std::size_t i = 0; i < count; ++i) {
            const std::size_t arity = 2 + i % 2;
            const Cochain eta = random_cochain(ctx.rng, alphabet, arity - 1, 2, 3);
            const Cochain phi = coboundary(eta);
            if (phi.is_zero()) continue;
            const Cochain psi = homotopy(phi);
            // Every tuple of words on which phi or psi is supported, shortened to psi's arity.
            std::set<WordTuple> probe;
            for (const auto& [t, c] : psi.table()) probe.insert(t);
            for (const auto& [t, c] : phi.table()) probe.insert(WordTuple(t.begin() + 1, t.end()));
            for (const WordTuple& t : probe) {
                std::vector<Series> args;
                for (const Word& w : t) args.push_back(Series::basis(w));
                ++tuples;
                const Complex via = homotopy_via_upsilon(phi, args);
                if (std::abs(via - psi.at(t)) > config.tol) {
                    Json words = Json::array();
                    for (const Word& w : t) words.push_back(to_string(w));
                    ctx.fail("two forms of the homotopy disagree", {{"eta", to_json(eta)}, {"tuple", words}});
                    return;
                }
            }
        }
        ctx.detail = count_detail(tuples, "basis tuples");
    });

    rec.run("multilinearity", [&](CheckContext& ctx) {
        for (std::size_t i = 0; i < runs; ++i) {
            const std::size_t arity = 1 + i % 3;
            const Cochain phi = random_cochain(ctx.rng, alphabet, arity, 2, 6);
            std::vector<Series> args;
            for (std::size_t k = 0; k < arity; ++k) args.push_back(random_series(ctx.rng, alphabet, 2, 4));
            const std::size_t slot = ctx.rng() % arity;
            const Series extra = random_series(ctx.rng, alphabet, 2, 4);
            const Complex scale(2.0, -1.0);
            auto with = [&](const Series& s) {
                auto a = args;
                a[slot] = s;
                return phi.evaluate(a);
            };
            const Complex lhs = with(args[slot] + scale * extra);
            const Complex rhs = with(args[slot]) + scale * with(extra);
            if (std::abs(lhs - rhs) > 1e-9 * (1.0 + std::abs(rhs))) {
                ctx.fail("evaluation is not linear in a slot", {{"cochain", to_json(phi)}, {"slot", slot}});
                return;
            }
        }
        ctx.detail = count_detail(runs, "random evaluations");
    });

    rec.run("first-cohomology", [&](CheckContext& ctx) {
        const std::size_t len = std::min<std::size_t>(3, config.max_len);
        const std::size_t dim = one_cocycle_dimension(alphabet, len);
        std::vector<Cochain> family = one_cocycle_kernel(alphabet, len);
        const std::size_t kernel_rank = cochain_rank(family);
        const auto generators = h1_generator_cocycles(alphabet);
        family.insert(family.end(), generators.begin(), generators.end());
        const bool span_ok = kernel_rank == alphabet.size() && cochain_rank(family) == alphabet.size();
        bool generators_ok = true;
        for (const Cochain& g : generators) generators_ok = generators_ok && is_cocycle(g);
        const bool zero_ok = coboundary(Cochain::scalar(alphabet, Complex(1.0, 2.0))).is_zero();
        ctx.detail = "dimension " + std::to_string(dim) + " at length <= " + std::to_string(len);
        if (dim != alphabet.size() || !span_ok || !generators_ok || !zero_ok) {
            ctx.fail(ctx.detail, {{"alphabet", alphabet.size()}, {"max_len", len}});
        }
    });

    return rec.finish();
}

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names = {"cohomology", "derivations", "operators", "words"};
    return names;
}

Report run_suite(const std::string& name, const RunConfig& config) {
    if (name == "words") return verify_words(config);
    if (name == "operators") return verify_operators(config);
    if (name == "derivations") return verify_derivations(config);
    if (name == "cohomology") return verify_cohomology(config);
    if (name == "all") return report_all(config);
    throw ConfigError("unknown suite \"" + name + "\"");
}

Report report_all(const RunConfig& config) {
    config.validate();
    const auto start = std::chrono::steady_clock::now();
    std::vector<std::future<Report>> pending;
    for (const std::string& name : suite_names()) {
        pending.push_back(std::async(std::launch::async, [name, config] { return run_suite(name, config); }));
    }
    Report all;
    all.suite = "all";
    all.config = config;
    for (auto& f : pending) all.suites.push_back(f.get());
    std::sort(all.suites.begin(), all.suites.end(),
              [](const Report& a, const Report& b) { return a.suite < b.suite; });
    all.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return all;
}

Report replay_counterexample(const Json& counterexample) {
    if (!counterexample.is_object() || !counterexample.contains("suite") || !counterexample.contains("config")) {
        throw ConfigError("counterexample payload needs \"suite\" and \"config\"");
    }
    const Json& suite = counterexample.at("suite");
    if (!suite.is_string()) throw ConfigError("\"suite\" must be a string");
    return run_suite(suite.get<std::string>(), RunConfig::from_json(counterexample.at("config")));
}

}  // namespace fsa
