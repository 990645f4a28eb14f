// mdsf command-line front end: build codes, verify the MDS property,
// evaluate failure bounds, run Monte Carlo experiments and export the
// results as CSV. Every file-producing run writes a JSON manifest sidecar
// holding the exact parameters, so any CSV can be regenerated bit for bit.

#include <chrono>
#include <cstdint>
#include <ctime>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "mdsf/analysis.hpp"
#include "mdsf/codes.hpp"
#include "mdsf/csvio.hpp"
#include "mdsf/sim.hpp"

namespace {

using nlohmann::json;

std::string iso8601_utc_now() {
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

void write_manifest(const std::string& csv_path, const std::string& subcommand,
                    std::uint64_t seed, const json& parameters) {
    json manifest{
        {"tool", "mdsf"},
        {"version", MDSF_VERSION},
        {"subcommand", subcommand},
        {"timestamp", iso8601_utc_now()},
        {"seed", seed},
        {"parameters", parameters},
        {"output", csv_path},
    };
    std::ofstream out(csv_path + ".manifest.json", std::ios::binary);
    if (!out) throw std::runtime_error("cannot write manifest next to " + csv_path);
    out << manifest.dump(2) << "\n";
}

std::ofstream open_csv(const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open output file " + path);
    return out;
}

// "0..6", "4" or "0,2,5"
std::vector<unsigned> parse_deltas(const std::string& text) {
    std::vector<unsigned> out;
    const auto dots = text.find("..");
    if (dots != std::string::npos) {
        const unsigned lo = std::stoul(text.substr(0, dots));
        const unsigned hi = std::stoul(text.substr(dots + 2));
        if (hi < lo) throw CLI::ValidationError("--deltas", "range is reversed");
        for (unsigned d = lo; d <= hi; ++d) out.push_back(d);
        return out;
    }
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) out.push_back(std::stoul(item));
    }
    if (out.empty()) throw CLI::ValidationError("--deltas", "no overhead values given");
    return out;
}

// Shared code-selection flags: exactly one of --rs, --spc, --lrfc-only.
struct CodeChoice {
    unsigned q = 0;
    std::vector<std::size_t> rs;  // n k
    std::size_t spc_k = 0;
    std::size_t lrfc_k = 0;

    void add_flags(CLI::App* app, bool need_q) {
        app->add_option("--rs", rs, "Reed-Solomon code as N K")->expected(2);
        app->add_option("--spc", spc_k, "single parity check code with dimension K (over F_2)");
        app->add_option("--lrfc-only", lrfc_k,
                        "no block code; plain random fountain with dimension K");
        auto* qopt = app->add_option("--q", q, "field order (power of two, 2..256)");
        if (need_q) qopt->check(CLI::IsMember({2, 4, 8, 16, 32, 64, 128, 256}));
    }

    mdsf::Code build() const {
        const int picked = (!rs.empty()) + (spc_k != 0) + (lrfc_k != 0);
        if (picked != 1) {
            throw CLI::ValidationError("code", "pick exactly one of --rs, --spc, --lrfc-only");
        }
        if (spc_k != 0) {
            if (q != 0 && q != 2) {
                throw CLI::ValidationError("--q", "single parity check codes live in F_2");
            }
            return mdsf::make_spc(spc_k);
        }
        if (q == 0) throw CLI::ValidationError("--q", "field order is required");
        unsigned degree = 0;
        for (unsigned m = 1; m <= 8; ++m) {
            if (1u << m == q) degree = m;
        }
        if (degree == 0) throw CLI::ValidationError("--q", "field order must be a power of two");
        auto field = mdsf::Field::make(degree);
        if (!rs.empty()) return mdsf::make_rs(rs[0], rs[1], std::move(field));
        return mdsf::make_lrfc_only(lrfc_k, std::move(field));
    }

    json params() const {
        json j{{"q", q}};
        if (!rs.empty()) j["rs"] = rs;
        if (spc_k) j["spc"] = spc_k;
        if (lrfc_k) j["lrfc_only"] = lrfc_k;
        return j;
    }
};

int run_bounds(unsigned q, std::size_t n, std::size_t k, double eps, unsigned delta_max,
               const std::string& out_path) {
    auto out = open_csv(out_path);
    mdsf::CsvWriter csv(out);
    csv.row({"delta", "lrfc_low", "lrfc_up", "concat_low", "concat_up"});
    for (unsigned d = 0; d <= delta_max; ++d) {
        const mdsf::BoundPair plain = mdsf::lrfc_bounds(d, q);
        const mdsf::BoundPair concat = mdsf::concat_bounds(d, q, n, k, eps);
        csv.row({mdsf::format_count(d), mdsf::format_probability(plain.lower),
                 mdsf::format_probability(plain.upper), mdsf::format_probability(concat.lower),
                 mdsf::format_probability(concat.upper)});
    }
    write_manifest(out_path, "bounds", 0,
                   json{{"q", q}, {"n", n}, {"k", k}, {"eps", eps}, {"delta_max", delta_max}});
    std::cout << "wrote " << out_path << " (" << delta_max + 1 << " overhead points)\n";
    return 0;
}

int run_simulate(const CodeChoice& choice, double eps, const std::string& deltas_text,
                 std::uint64_t trials, std::uint64_t target_failures, std::uint64_t seed,
                 std::size_t payload_len, unsigned threads, const std::string& out_path) {
    const mdsf::Code code = choice.build();
    const mdsf::SimConfig cfg{
        .code = code,
        .epsilon = eps,
        .deltas = parse_deltas(deltas_text),
        .trials = trials,
        .seed = seed,
        .payload_len = payload_len,
        .target_failures = target_failures != 0
                               ? std::optional<std::uint64_t>(target_failures)
                               : std::nullopt,
        .threads = threads,
    };

    const auto points = mdsf::estimate_pf(cfg);

    auto out = open_csv(out_path);
    mdsf::CsvWriter csv(out);
    csv.row({"delta", "trials", "failures", "p_hat", "ci_low", "ci_high", "bound_low",
             "bound_high"});
    const unsigned q = code.field->order();
    for (const auto& pt : points) {
        const mdsf::BoundPair band = code.kind == mdsf::CodeKind::LrfcOnly
                                         ? mdsf::lrfc_bounds(pt.delta, q)
                                         : mdsf::concat_bounds(pt.delta, q, code.n, code.k, eps);
        csv.row({mdsf::format_count(pt.delta), mdsf::format_count(pt.trials),
                 mdsf::format_count(pt.failures), mdsf::format_probability(pt.p_hat),
                 mdsf::format_probability(pt.ci_low), mdsf::format_probability(pt.ci_high),
                 mdsf::format_probability(band.lower), mdsf::format_probability(band.upper)});
    }

    json params = choice.params();
    params["eps"] = eps;
    params["deltas"] = deltas_text;
    params["trials"] = trials;
    params["target_failures"] = target_failures;
    params["payload_len"] = payload_len;
    write_manifest(out_path, "simulate", seed, params);
    std::cout << "wrote " << out_path << " (" << points.size() << " overhead points)\n";
    return 0;
}

struct MultiuserModel {
    std::string name;
    mdsf::FailureModel analytic;
    std::optional<mdsf::Code> code;  // unset for the idealized model
};

MultiuserModel parse_model(const std::string& name, std::size_t k, std::size_t rs_n,
                           double eps) {
    auto field_for = [](unsigned q) {
        for (unsigned m = 1; m <= 8; ++m) {
            if (1u << m == q) return mdsf::Field::make(m);
        }
        throw CLI::ValidationError("--models", "field order must be a power of two in 2..256");
    };
    if (name == "ideal") {
        return {name, mdsf::FailureModel::idealized(), std::nullopt};
    }
    if (name.rfind("lrfc", 0) == 0) {
        const unsigned q = std::stoul(name.substr(4));
        return {name, mdsf::FailureModel::lrfc(q), mdsf::make_lrfc_only(k, field_for(q))};
    }
    if (name.rfind("concat", 0) == 0) {
        const unsigned q = std::stoul(name.substr(6));
        if (q == 2) {
            return {name, mdsf::FailureModel::concatenated(2, k + 1, k, eps), mdsf::make_spc(k)};
        }
        return {name, mdsf::FailureModel::concatenated(q, rs_n, k, eps),
                mdsf::make_rs(rs_n, k, field_for(q))};
    }
    throw CLI::ValidationError("--models", "unknown model '" + name +
                                               "' (want ideal, lrfcQ or concatQ)");
}

int run_multiuser(std::uint64_t users, double eps, std::size_t k, std::size_t rs_n,
                  const std::string& models_text, unsigned delta_max, std::uint64_t trials,
                  std::uint64_t seed, unsigned threads, const std::string& out_path) {
    std::vector<MultiuserModel> models;
    std::stringstream ss(models_text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) models.push_back(parse_model(item, k, rs_n, eps));
    }
    if (models.empty()) throw CLI::ValidationError("--models", "no models given");

    // The idealized model's analytic curve is exact, so only real codes get
    // an empirical column.
    std::vector<std::optional<mdsf::MultiuserEstimate>> empirical(models.size());
    if (trials > 0) {
        for (std::size_t i = 0; i < models.size(); ++i) {
            if (!models[i].code) continue;
            const mdsf::MultiuserConfig mu{
                .code = *models[i].code,
                .epsilon = eps,
                .users = users,
                .trials = trials,
                .seed = mdsf::substream(seed, i),
                .threads = threads,
            };
            empirical[i] = mdsf::estimate_multiuser(mu);
        }
    }

    auto out = open_csv(out_path);
    mdsf::CsvWriter csv(out);
    std::vector<std::string> header{"Delta"};
    for (const auto& model : models) {
        header.push_back(model.name + "_low");
        header.push_back(model.name + "_up");
        if (trials > 0 && model.code) header.push_back(model.name + "_emp");
    }
    csv.row(header);
    for (unsigned d = 0; d <= delta_max; ++d) {
        std::vector<std::string> row{mdsf::format_count(d)};
        for (std::size_t i = 0; i < models.size(); ++i) {
            const mdsf::SystemParams params{k, d, eps, users};
            const mdsf::BoundPair pe = mdsf::system_failure(params, models[i].analytic);
            row.push_back(mdsf::format_probability(pe.lower));
            row.push_back(mdsf::format_probability(pe.upper));
            if (empirical[i]) {
                row.push_back(mdsf::format_probability(empirical[i]->pe_at(d)));
            }
        }
        csv.row(row);
    }

    write_manifest(out_path, "multiuser", seed,
                   json{{"users", users},
                        {"eps", eps},
                        {"k", k},
                        {"rs_n", rs_n},
                        {"models", models_text},
                        {"delta_max", delta_max},
                        {"trials", trials}});
    std::cout << "wrote " << out_path << " (" << models.size() << " models, "
              << delta_max + 1 << " overhead points)\n";
    return 0;
}

int run_mds_check(const CodeChoice& choice, std::uint64_t exhaustive_limit, std::uint64_t samples,
                  std::uint64_t seed, const std::string& out_path) {
    const mdsf::Code code = choice.build();
    const mdsf::MdsCheck check = mdsf::mds_check(code, exhaustive_limit, samples, seed);
    if (check.verified) {
        std::cout << "verified (" << (check.exhaustive ? "exhaustive" : "sampled") << ", "
                  << check.checked << " submatrices checked)\n";
    } else {
        std::cout << "NOT MDS: singular column set";
        for (std::size_t c : check.counterexample) std::cout << ' ' << c;
        std::cout << '\n';
    }
    if (!out_path.empty()) {
        auto out = open_csv(out_path);
        mdsf::CsvWriter csv(out);
        csv.row({"n", "k", "q", "verified", "exhaustive", "checked", "counterexample"});
        std::string cols;
        for (std::size_t c : check.counterexample) {
            if (!cols.empty()) cols += ' ';
            cols += std::to_string(c);
        }
        csv.row({mdsf::format_count(code.n), mdsf::format_count(code.k),
                 mdsf::format_count(code.field->order()), check.verified ? "1" : "0",
                 check.exhaustive ? "1" : "0", mdsf::format_count(check.checked), cols});
        json params = choice.params();
        params["exhaustive_limit"] = exhaustive_limit;
        params["samples"] = samples;
        write_manifest(out_path, "mds-check", seed, params);
    }
    return check.verified ? 0 : 2;
}

int run_export_gen(const CodeChoice& choice, const std::string& out_path) {
    const mdsf::Code code = choice.build();
    auto out = open_csv(out_path);
    mdsf::write_generator_csv(code, out);
    write_manifest(out_path, "export-gen", 0, choice.params());
    std::cout << "wrote " << out_path << " (" << code.k << "x" << code.n << " generator)\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Erasure-coding toolkit: systematic MDS block codes concatenated with a "
                 "random linear fountain, plus failure-bound and Monte Carlo CSV exports"};
    app.set_version_flag("--version", MDSF_VERSION);
    app.require_subcommand(1);

    int rc = 0;

    // bounds
    auto* bounds = app.add_subcommand("bounds", "analytic failure-probability bounds vs overhead");
    struct {
        unsigned q = 16;
        std::size_t n = 15, k = 10;
        double eps = 0.05;
        unsigned delta_max = 10;
        std::string out = "bounds.csv";
    } b;
    bounds->add_option("--q", b.q, "field order")->check(CLI::Range(2u, 1u << 30));
    bounds->add_option("--n", b.n, "block code length");
    bounds->add_option("--k", b.k, "source block size");
    bounds->add_option("--eps", b.eps, "erasure probability")->check(CLI::Range(0.0, 0.999999));
    bounds->add_option("--delta-max", b.delta_max, "largest receiver overhead");
    bounds->add_option("--out", b.out, "output CSV path");
    bounds->callback([&] { rc = run_bounds(b.q, b.n, b.k, b.eps, b.delta_max, b.out); });

    // simulate
    auto* simulate = app.add_subcommand("simulate", "Monte Carlo failure rate per overhead point");
    struct {
        CodeChoice choice;
        double eps = 0.1;
        std::string deltas = "0..4";
        std::uint64_t trials = 100000;
        std::uint64_t target_failures = 100;
        std::uint64_t seed = 1;
        std::size_t payload_len = 1;
        unsigned threads = 0;
        std::string out = "simulate.csv";
    } s;
    s.choice.add_flags(simulate, true);
    simulate->add_option("--eps", s.eps, "erasure probability")->check(CLI::Range(0.0, 0.999999));
    simulate->add_option("--deltas", s.deltas, "overheads, e.g. 0..6 or 0,2,4");
    simulate->add_option("--trials", s.trials, "per-point trial cap");
    simulate->add_option("--target-failures", s.target_failures,
                         "stop a point after this many failures (0 = run the full cap)");
    simulate->add_option("--seed", s.seed, "stream seed")->envname("MDSF_SEED");
    simulate->add_option("--payload-len", s.payload_len, "field symbols per packet");
    simulate->add_option("--threads", s.threads, "worker threads (0 = hardware)");
    simulate->add_option("--out", s.out, "output CSV path");
    simulate->callback([&] {
        rc = run_simulate(s.choice, s.eps, s.deltas, s.trials, s.target_failures, s.seed,
                          s.payload_len, s.threads, s.out);
    });

    // multiuser
    auto* multiuser =
        app.add_subcommand("multiuser", "transmitter overhead needed by N acknowledging receivers");
    struct {
        std::uint64_t users = 10000;
        double eps = 0.01;
        std::size_t k = 10;
        std::size_t rs_n = 15;
        std::string models = "lrfc2,concat2,lrfc16,concat16,ideal";
        unsigned delta_max = 40;
        std::uint64_t trials = 0;
        std::uint64_t seed = 1;
        unsigned threads = 0;
        std::string out = "multiuser.csv";
    } m;
    multiuser->add_option("--users", m.users, "number of receivers");
    multiuser->add_option("--eps", m.eps, "erasure probability")->check(CLI::Range(0.0, 0.999999));
    multiuser->add_option("--k", m.k, "source block size");
    multiuser->add_option("--rs-n", m.rs_n, "Reed-Solomon length for concatQ models with q > 2");
    multiuser->add_option("--models", m.models, "comma list of ideal, lrfcQ, concatQ");
    multiuser->add_option("--delta-max", m.delta_max, "largest transmitter overhead");
    multiuser->add_option("--trials", m.trials,
                          "empirical trials per simulable model (0 = analytic only)");
    multiuser->add_option("--seed", m.seed, "stream seed")->envname("MDSF_SEED");
    multiuser->add_option("--threads", m.threads, "worker threads (0 = hardware)");
    multiuser->add_option("--out", m.out, "output CSV path");
    multiuser->callback([&] {
        rc = run_multiuser(m.users, m.eps, m.k, m.rs_n, m.models, m.delta_max, m.trials, m.seed,
                           m.threads, m.out);
    });

    // mds-check
    auto* mds = app.add_subcommand("mds-check", "verify every k columns of the generator invert");
    struct {
        CodeChoice choice;
        std::uint64_t exhaustive_limit = 1000000;
        std::uint64_t samples = 10000;
        std::uint64_t seed = 1;
        std::string out;
    } c;
    c.choice.add_flags(mds, true);
    mds->add_option("--exhaustive-limit", c.exhaustive_limit,
                    "check all subsets when C(n,k) is at most this");
    mds->add_option("--samples", c.samples, "random subsets when beyond the exhaustive limit");
    mds->add_option("--seed", c.seed, "stream seed")->envname("MDSF_SEED");
    mds->add_option("--out", c.out, "optional verdict CSV path");
    mds->callback(
        [&] { rc = run_mds_check(c.choice, c.exhaustive_limit, c.samples, c.seed, c.out); });

    // export-gen
    auto* exportg = app.add_subcommand("export-gen", "generator matrix as row-major integer CSV");
    struct {
        CodeChoice choice;
        std::string out = "generator.csv";
    } g;
    g.choice.add_flags(exportg, true);
    exportg->add_option("--out", g.out, "output CSV path");
    exportg->callback([&] { rc = run_export_gen(g.choice, g.out); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return rc;
}
