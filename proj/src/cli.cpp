#include "polytri/cli.hpp"

#include "polytri/closed_forms.hpp"
#include "polytri/gf_engine.hpp"
#include "polytri/oracle.hpp"
#include "polytri/sampler.hpp"
#include "polytri/weights.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <optional>
#include <sstream>

namespace polytri::cli {

namespace {

using json = nlohmann::ordered_json;

struct Options {
    int n = 0;
    std::string weight;
    std::string method;
    std::string format = "json";
    std::uint64_t samples = 100000;
    std::uint64_t seed = 42;
    unsigned threads = 0;
    int cap = kDefaultEnumerationCap;
    int n_max = 9;
    bool emit = false;
    bool timing = false;
    std::string k;
    std::string id;
    std::string w = "1";
    bool list = false;
};

struct Record {
    std::string command;
    std::optional<int> n;
    std::optional<std::string> weight;
    std::optional<std::string> method;
    json payload = json::object();
    std::optional<std::uint64_t> seed;
    std::optional<std::uint64_t> samples;
    std::vector<std::string> csv_header;
    std::vector<std::vector<std::string>> csv_rows;
};

json real_json(double x) { return std::stod(format_real(x)); }

json value_json(const Value& v) {
    if (is_exact(v)) return to_string(std::get<Rat>(v));
    return real_json(std::get<double>(v));
}

std::string cell(const json& v) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_number_float()) return format_real(v.get<double>());
    return v.dump();
}

std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) {
        if (c == '"') q += '"';
        q += c;
    }
    return q + "\"";
}

// field,value rows for every scalar in the payload.
void flat_csv(Record& r) {
    r.csv_header = {"field", "value"};
    for (const auto& [key, v] : r.payload.items())
        if (!v.is_structured()) r.csv_rows.push_back({key, cell(v)});
}

template <typename T>
json optional_json(const std::optional<T>& v) {
    return v ? json(*v) : json(nullptr);
}

void emit(const Record& r, const std::string& format, std::optional<double> runtime_ms, std::ostream& out) {
    if (format == "csv") {
        auto line = [&](const std::vector<std::string>& row) {
            for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << csv_escape(row[i]);
            out << '\n';
        };
        line(r.csv_header);
        for (const auto& row : r.csv_rows) line(row);
        return;
    }
    json doc;
    doc["command"] = r.command;
    doc["n"] = optional_json(r.n);
    doc["weight"] = optional_json(r.weight);
    doc["method"] = optional_json(r.method);
    doc["payload"] = r.payload;
    doc["meta"] = {{"seed", optional_json(r.seed)},
                   {"samples", optional_json(r.samples)},
                   {"runtime_ms", runtime_ms ? real_json(*runtime_ms) : json(nullptr)}};
    out << doc.dump(2) << '\n';
}

WeightSpec load_weight(const Options& o) {
    WeightSpec f = parse_weight(o.weight);
    if (o.n < 3) throw DomainError("polygon needs at least 3 vertices, got " + std::to_string(o.n));
    if (f.table() && f.table()->n != o.n)
        throw DomainError("custom table " + f.table()->source + " describes the " + std::to_string(f.table()->n) +
                          "-gon, but --n is " + std::to_string(o.n));
    if (f.kind() == WeightKind::BlueCount && f.p() > o.n - 2)
        throw DomainError("bluecount:" + std::to_string(f.p()) + " needs p <= n-2 = " + std::to_string(o.n - 2));
    return f;
}

Record base(const std::string& command, const Options& o, const WeightSpec& f) {
    Record r;
    r.command = command;
    r.n = o.n;
    r.weight = f.name();
    if (!o.method.empty()) r.method = o.method;
    return r;
}

Record cmd_moments(const Options& o) {
    const WeightSpec f = load_weight(o);
    Record r = base("moments", o, f);
    if (o.method == "mc") {
        const MonteCarloEstimate mc = monte_carlo(SampleRun{o.n, f, o.samples, o.seed}, o.threads);
        r.payload = {{"mean", real_json(mc.mean)},
                     {"variance", real_json(mc.variance)},
                     {"standard_error", real_json(mc.standard_error)},
                     {"samples", mc.samples},
                     {"exact", false}};
        r.seed = o.seed;
        r.samples = o.samples;
        flat_csv(r);
        return r;
    }
    MomentReport m;
    std::string mean_source, variance_source;
    if (o.method == "gf") {
        if (!f.is_exact()) throw DomainError("weight '" + f.name() + "' is real-valued; use --method numeric");
        m = moments_exact(o.n, f);
    } else if (o.method == "numeric") {
        m = moments_numeric(o.n, f);
    } else if (o.method == "enum") {
        m = enumerate_summary(o.n, f, o.cap).moments;
    } else {
        const FormulaIds ids = formulas_for(f);
        auto usable = [&](const std::string& id) {
            if (id.empty()) return false;
            for (const auto& info : formula_catalog())
                if (info.id == id) return o.n >= info.min_n;
            return false;
        };
        const bool shift = classify(f, o.n).shift_invariant;
        std::optional<Value> mean, variance;
        if (usable(ids.mean)) {
            mean = std::get<Rat>(formula_library(ids.mean, o.n, f.w()));
            mean_source = ids.mean;
        } else if (shift) {
            mean = coh1_expectation(o.n, 1, f);
            mean_source = "beta";
        }
        if (usable(ids.variance)) {
            variance = std::get<Rat>(formula_library(ids.variance, o.n, f.w()));
            variance_source = ids.variance;
        } else if (shift) {
            variance = coh1_variance(o.n, f);
            variance_source = "lambda";
        }
        if (!mean) throw DomainError("no closed form applies to '" + f.name() + "' at n = " + std::to_string(o.n));
        m.mean = *mean;
        m.exact = is_exact(*mean);
        if (variance) {
            m.variance = *variance;
            m.exact = m.exact && is_exact(*variance);
        }
        r.payload["mean"] = value_json(m.mean);
        r.payload["variance"] = variance ? value_json(*variance) : json(nullptr);
        r.payload["exact"] = m.exact;
        r.payload["mean_formula"] = mean_source;
        r.payload["variance_formula"] = variance ? json(variance_source) : json(nullptr);
        flat_csv(r);
        return r;
    }
    r.payload = {{"mean", value_json(m.mean)}, {"variance", value_json(m.variance)}, {"exact", m.exact}};
    flat_csv(r);
    return r;
}

Record cmd_dist(const Options& o) {
    const WeightSpec f = load_weight(o);
    Record r = base("dist", o, f);
    const DistTable t = o.method == "gf" ? distribution(o.n, f) : exact_distribution(o.n, f, o.cap);
    json entries = json::array();
    r.csv_header = {"value", "probability"};
    for (const auto& [v, p] : t.entries) {
        entries.push_back({{"value", value_json(v)}, {"probability", to_string(p)}});
        r.csv_rows.push_back({cell(value_json(v)), to_string(p)});
    }
    r.payload = {{"atoms", t.entries.size()}, {"entries", entries}};
    return r;
}

Record cmd_sample(const Options& o) {
    const WeightSpec f = load_weight(o);
    Record r = base("sample", o, f);
    r.method = "sampler";
    r.seed = o.seed;
    r.samples = o.samples;
    const MonteCarloEstimate mc = monte_carlo(SampleRun{o.n, f, o.samples, o.seed}, o.threads);
    r.payload = {{"mean", real_json(mc.mean)},
                 {"variance", real_json(mc.variance)},
                 {"standard_error", real_json(mc.standard_error)},
                 {"samples", mc.samples}};
    if (!o.emit) {
        flat_csv(r);
        return r;
    }
    const PolygonSpec polygon = default_polygon(f, o.n);
    SampleStream stream(o.n, o.seed);
    std::vector<TriangleRef> tris;
    json list = json::array();
    r.csv_header = {"index", "triangulation", "S"};
    for (std::uint64_t i = 0; i < o.samples; ++i) {
        stream.next(tris);
        const Triangulation t = from_triangles(o.n, tris);
        const json s = value_json(weight_sum(t, f, polygon));
        list.push_back({{"index", i}, {"triangulation", t.to_text()}, {"S", s}});
        r.csv_rows.push_back({std::to_string(i), t.to_text(), cell(s)});
    }
    r.payload["triangulations"] = std::move(list);
    return r;
}

std::vector<int> parse_k(const std::string& text) {
    std::vector<int> k;
    std::stringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) {
        try {
            std::size_t used = 0;
            k.push_back(std::stoi(item, &used));
            if (used != item.size()) throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw DomainError("bad portfolio count '" + item + "' in --k");
        }
    }
    if (k.empty()) throw DomainError("--k needs at least one count");
    return k;
}

std::string join(const std::vector<int>& k) {
    std::string s;
    for (std::size_t i = 0; i < k.size(); ++i) s += (i ? "," : "") + std::to_string(k[i]);
    return s;
}

Record cmd_portfolio(const Options& o) {
    if (o.n < 3) throw DomainError("polygon needs at least 3 vertices, got " + std::to_string(o.n));
    Record r;
    r.command = "portfolio";
    r.n = o.n;
    if (!o.k.empty()) {
        std::vector<int> k = parse_k(o.k);
        const Rat p = portfolio_probability({o.n, k});
        k.resize(o.n - 2, 0);
        int K = 0;
        for (int x : k) K += x;
        r.payload = {{"k", k}, {"K", K}, {"probability", to_string(p)}};
        r.csv_header = {"k", "K", "probability"};
        r.csv_rows.push_back({join(k), std::to_string(K), to_string(p)});
        return r;
    }
    json entries = json::array();
    r.csv_header = {"k", "K", "probability"};
    for (int K = 1; K <= o.n - 2; ++K)
        for (const auto& k : portfolio_vectors(o.n, K)) {
            const Rat p = portfolio_probability({o.n, k});
            entries.push_back({{"k", k}, {"K", K}, {"probability", to_string(p)}});
            r.csv_rows.push_back({join(k), std::to_string(K), to_string(p)});
        }
    r.payload = {{"entries", entries}};
    return r;
}

Record cmd_formula(const Options& o) {
    Record r;
    r.command = "formula";
    if (o.list) {
        json entries = json::array();
        r.csv_header = {"id", "min_n", "needs_w", "description"};
        for (const auto& info : formula_catalog()) {
            entries.push_back(
                {{"id", info.id}, {"min_n", info.min_n}, {"needs_w", info.needs_w}, {"description", info.description}});
            r.csv_rows.push_back({info.id, std::to_string(info.min_n), info.needs_w ? "true" : "false", info.description});
        }
        r.payload = {{"formulas", entries}};
        return r;
    }
    if (o.id.empty()) throw DomainError("formula needs --id (or --list)");
    r.n = o.n;
    const Rat w = parse_rat(o.w);
    const FormulaValue v = formula_library(o.id, o.n, w);
    r.payload["id"] = o.id;
    r.payload["w"] = to_string(w);
    if (const Rat* q = std::get_if<Rat>(&v)) {
        r.payload["value"] = to_string(*q);
        flat_csv(r);
        return r;
    }
    json coeffs = json::array();
    r.csv_header = {"exponent", "probability"};
    for (const auto& [e, c] : std::get<ZPoly>(v).coeffs()) {
        coeffs.push_back({{"exponent", e}, {"probability", to_string(c)}});
        r.csv_rows.push_back({std::to_string(e), to_string(c)});
    }
    r.payload["coefficients"] = coeffs;
    return r;
}

json checks_json(const std::vector<PathCheck>& checks) {
    json a = json::array();
    for (const auto& c : checks) a.push_back({{"check", c.name}, {"verdict", to_string(c.verdict)}, {"detail", c.detail}});
    return a;
}

int cmd_verify(const Options& o, std::ostream& out, std::optional<double>* runtime) {
    const auto start = std::chrono::steady_clock::now();
    CrossCheckOptions opt;
    opt.mc_samples = o.samples;
    opt.seed = o.seed;
    opt.threads = o.threads;
    const VerifyReport rep = run_verify(o.n_max, opt);
    if (o.timing)
        *runtime = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();

    std::size_t comparisons = rep.module_checks.size(), failures = 0, flags = 0;
    for (const auto& c : rep.module_checks) failures += c.verdict == Verdict::Fail;
    for (const auto& x : rep.cross_checks) {
        comparisons += x.checks.size();
        flags += x.flags.size();
        for (const auto& c : x.checks) failures += c.verdict == Verdict::Fail;
    }

    if (o.format == "text") {
        for (const auto& c : rep.module_checks)
            out << to_string(c.verdict) << "  " << c.name << ": " << c.detail << '\n';
        for (const auto& x : rep.cross_checks) {
            for (const auto& c : x.checks)
                out << to_string(c.verdict) << "  n=" << x.n << " " << x.weight << "  " << c.name << ": " << c.detail
                    << '\n';
            for (const auto& flag : x.flags) out << "FLAG  n=" << x.n << " " << x.weight << "  " << flag << '\n';
        }
        out << (rep.passed() ? "verify: PASS" : "verify: FAIL") << " (" << comparisons << " comparisons, " << failures
            << " failures, " << flags << " erratum flags)\n";
        return rep.passed() ? kExitOk : kExitVerify;
    }

    Record r;
    r.command = "verify";
    r.n = o.n_max;
    r.method = "cross-check";
    r.seed = o.seed;
    r.samples = o.samples;
    json cross = json::array();
    r.csv_header = {"scope", "n", "weight", "check", "verdict", "detail"};
    for (const auto& c : rep.module_checks) r.csv_rows.push_back({"module", "", "", c.name, to_string(c.verdict), c.detail});
    for (const auto& x : rep.cross_checks) {
        cross.push_back({{"n", x.n},
                         {"weight", x.weight},
                         {"passed", x.passed()},
                         {"checks", checks_json(x.checks)},
                         {"flags", x.flags},
                         {"discrepancies", x.discrepancies}});
        for (const auto& c : x.checks)
            r.csv_rows.push_back({"cross", std::to_string(x.n), x.weight, c.name, to_string(c.verdict), c.detail});
        for (const auto& flag : x.flags)
            r.csv_rows.push_back({"cross", std::to_string(x.n), x.weight, "erratum", "FLAG", flag});
    }
    r.payload = {{"passed", rep.passed()},
                 {"comparisons", comparisons},
                 {"failures", failures},
                 {"flags", flags},
                 {"module_checks", checks_json(rep.module_checks)},
                 {"cross_checks", cross}};
    emit(r, o.format, *runtime, out);
    return rep.passed() ? kExitOk : kExitVerify;
}

int cmd_enumerate(const Options& o, std::ostream& out, const std::optional<double>& runtime) {
    TriangulationEnumerator e(o.n, o.cap);
    if (o.format == "text") {
        while (auto t = e.next()) out << t->to_text() << '\n';
        return kExitOk;
    }
    Record r;
    r.command = "enumerate";
    r.n = o.n;
    json list = json::array();
    while (auto t = e.next()) list.push_back(t->to_text());
    r.payload = {{"count", list.size()}, {"triangulations", list}};
    emit(r, "json", runtime, out);
    return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Random convex-polygon triangulations: exact distributions and moments of triangle-weight sums",
                 "polytri"};
    app.require_subcommand(1);
    Options o;
    const std::vector<std::string> data_formats{"json", "csv"};

    auto add_n = [&](CLI::App* c) { c->add_option("--n", o.n, "polygon size")->required(); };
    auto add_weight = [&](CLI::App* c) {
        c->add_option("--weight", o.weight,
                      "const1 | oneside | ears | oneside-w:<rat> | degree | bluesum | bluecount:<p> | "
                      "curious-w:<rat> | perimeter | area | inradius | custom:<path>")
            ->required();
    };
    auto add_format = [&](CLI::App* c, const std::vector<std::string>& allowed) {
        c->add_option("--format", o.format, "output format")->check(CLI::IsMember(allowed));
    };
    auto add_sampling = [&](CLI::App* c) {
        c->add_option("--samples", o.samples, "sample count")->check(CLI::PositiveNumber);
        c->add_option("--seed", o.seed, "64-bit seed");
        c->add_option("--threads", o.threads, "worker threads (0 = all cores)");
    };
    auto add_common = [&](CLI::App* c) { c->add_flag("--timing", o.timing, "fill meta.runtime_ms"); };

    CLI::App* moments = app.add_subcommand("moments", "mean and variance of S_n");
    add_n(moments);
    add_weight(moments);
    moments->add_option("--method", o.method, "gf | closed | numeric | enum | mc")
        ->required()
        ->check(CLI::IsMember({"gf", "closed", "numeric", "enum", "mc"}));
    add_sampling(moments);
    moments->add_option("--cap", o.cap, "enumeration cap");
    add_format(moments, data_formats);
    add_common(moments);

    CLI::App* dist = app.add_subcommand("dist", "exact distribution of S_n");
    add_n(dist);
    add_weight(dist);
    dist->add_option("--method", o.method, "gf | enum")->required()->check(CLI::IsMember({"gf", "enum"}));
    dist->add_option("--cap", o.cap, "enumeration cap");
    add_format(dist, data_formats);
    add_common(dist);

    CLI::App* sample = app.add_subcommand("sample", "Monte Carlo estimate from uniform random triangulations");
    add_n(sample);
    add_weight(sample);
    add_sampling(sample);
    sample->add_flag("--emit-triangulations", o.emit, "list every sampled triangulation and its S");
    add_format(sample, data_formats);
    add_common(sample);

    CLI::App* portfolio = app.add_subcommand("portfolio", "law of the vertex-1 arc multiset");
    add_n(portfolio);
    portfolio->add_option("--k", o.k, "counts k_1,k_2,... (omit to list every vector)");
    add_format(portfolio, data_formats);
    add_common(portfolio);

    CLI::App* verify = app.add_subcommand("verify", "full cross-check matrix");
    verify->add_option("--n-max", o.n_max, "largest polygon size");
    add_sampling(verify);
    add_format(verify, {"json", "csv", "text"});
    add_common(verify);

    CLI::App* enumerate = app.add_subcommand("enumerate", "all triangulations in text form");
    add_n(enumerate);
    enumerate->add_option("--cap", o.cap, "enumeration cap");
    enumerate->add_option("--format", o.format, "text | json")->check(CLI::IsMember({"text", "json"}));
    add_common(enumerate);

    CLI::App* formula = app.add_subcommand("formula", "evaluate a closed form by id");
    formula->add_option("--id", o.id, "formula id");
    formula->add_option("--n", o.n, "polygon size");
    formula->add_option("--w", o.w, "rational parameter");
    formula->add_flag("--list", o.list, "list formula ids");
    add_format(formula, data_formats);
    add_common(formula);

    enumerate->callback([&] {
        if (o.format == "json" && enumerate->count("--format") == 0) o.format = "text";
    });

    std::vector<std::string> argv_store{"polytri"};
    argv_store.insert(argv_store.end(), args.begin(), args.end());
    std::vector<char*> argv;
    for (auto& a : argv_store) argv.push_back(a.data());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        const auto start = std::chrono::steady_clock::now();
        std::optional<double> runtime;
        auto finish = [&](const Record& r) {
            if (o.timing)
                runtime = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
            emit(r, o.format, runtime, out);
            return kExitOk;
        };
        if (moments->parsed()) return finish(cmd_moments(o));
        if (dist->parsed()) return finish(cmd_dist(o));
        if (sample->parsed()) return finish(cmd_sample(o));
        if (portfolio->parsed()) return finish(cmd_portfolio(o));
        if (formula->parsed()) return finish(cmd_formula(o));
        if (verify->parsed()) return cmd_verify(o, out, &runtime);
        if (enumerate->parsed()) return cmd_enumerate(o, out, runtime);
    } catch (const DomainError& e) {
        err << "error: " << e.what() << '\n';
        return kExitDomain;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << '\n';
        return kExitDomain;
    }
    return kExitUsage;
}

}  // namespace polytri::cli
