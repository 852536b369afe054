#include "serialize.hpp"

#include "CLI11.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>

namespace {

using namespace crpvi;
using io::json;

constexpr int kOk = 0;
constexpr int kCheckFailed = 1;
constexpr int kUsage = 2;

struct Output {
    json doc;
    io::CsvTable csv;
    std::string text;
    int status = kOk;
};

struct Options {
    std::string spec = "G336";
    std::uint64_t seed = 1;
    std::string format = "json";
    std::string out;
    unsigned jobs = 1;
    bool fix_first = false;
    std::size_t samples = 100;
    double tol = 1e-10;
    double step = 1e-3;
    double t0 = 0.5;
    double t1 = 0.8;
    std::string lambda, mu;
};

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

json header(const std::string& command) { return {{"schema", 1}, {"command", command}}; }

GroupSpec parse_spec(const std::string& s) {
    try {
        return GroupSpec::parse(s);
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
}

std::array<Rational, 3> parse_triple(const std::string& s, const char* what) {
    std::array<Rational, 3> out;
    std::stringstream ss(s);
    std::string item;
    std::size_t i = 0;
    try {
        while (std::getline(ss, item, ',')) {
            if (i == 3) throw UsageError(std::string(what) + " takes exactly three comma-separated rationals");
            out[i++] = Rational::parse(item);
        }
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    if (i != 3) throw UsageError(std::string(what) + " takes exactly three comma-separated rationals");
    return out;
}

std::string join(const std::vector<int>& v, const char* sep = ",") {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? sep : "") + std::to_string(v[i]);
    return s;
}

std::string join(std::initializer_list<int> v, const char* sep = ",") { return join(std::vector<int>(v), sep); }

std::string join(const std::vector<std::size_t>& v, const char* sep = ",") {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? sep : "") + std::to_string(v[i]);
    return s;
}

std::vector<GroupSpec> catalogue() {
    std::vector<GroupSpec> out;
    for (int m = 2; m <= 6; ++m) {
        out.push_back(GroupSpec::imprimitive(m, 1));
        out.push_back(GroupSpec::imprimitive(m, m));
    }
    for (auto id : {ExceptionalId::icosahedral, ExceptionalId::G336, ExceptionalId::G648, ExceptionalId::G1296,
                    ExceptionalId::G2160})
        out.push_back(GroupSpec::exceptional(id));
    return out;
}

Output groups_list() {
    Output o;
    o.doc = header("groups list");
    o.doc["groups"] = json::array();
    o.csv.push_back({"group", "order", "degrees"});
    std::ostringstream t;
    for (const auto& s : catalogue()) {
        const auto d = s.degrees();
        o.doc["groups"].push_back({{"group", s.name()}, {"order", s.expected_order()}, {"degrees", d}});
        o.csv.push_back({s.name(), std::to_string(s.expected_order()), join({d[0], d[1], d[2]}, " ")});
        t << s.name() << "  order " << s.expected_order() << "  degrees " << join({d[0], d[1], d[2]}) << '\n';
    }
    o.text = t.str();
    return o;
}

Output groups_info(const Options& opt) {
    const ReflectionGroup g = build_group(parse_spec(opt.spec));
    Output o;
    o.doc = header("groups info");
    o.doc["group"] = g.spec.name();
    o.doc["order"] = g.order;
    o.doc["degrees"] = g.degrees;
    o.doc["reflections"] = g.reflections.size();
    o.doc["reflection_classes"] = g.reflection_class_count;
    o.doc["conductor"] = g.conductor;
    o.doc["generators"] = json::array();
    for (const auto& r : g.generators) o.doc["generators"].push_back(io::to_json(r));
    o.csv = {{"group", "order", "degrees", "reflections", "reflection_classes", "conductor"},
             {g.spec.name(), std::to_string(g.order), join({g.degrees[0], g.degrees[1], g.degrees[2]}, " "),
              std::to_string(g.reflections.size()), std::to_string(g.reflection_class_count), std::to_string(g.conductor)}};
    std::ostringstream t;
    t << g.spec.name() << ": order " << g.order << ", degrees " << join({g.degrees[0], g.degrees[1], g.degrees[2]})
      << ", " << g.reflections.size() << " reflections in " << g.reflection_class_count << " conjugacy class(es), field Q(zeta_"
      << g.conductor << ")\n";
    o.text = t.str();
    return o;
}

void warn_fix_first(const ReflectionGroup& g, bool fix_first) {
    if (fix_first && g.reflection_class_count > 1)
        std::cerr << "warning: " << g.spec.name() << " has " << g.reflection_class_count
                  << " classes of reflections; fixing r1 covers only triples whose first entry is conjugate to it\n";
}

std::vector<TripleClass> classes_for(const ReflectionGroup& g, const Options& opt) {
    warn_fix_first(g, opt.fix_first);
    return classify_triples(g, opt.fix_first ? std::optional<Mat3>(g.generators[0]) : std::nullopt, opt.jobs);
}

Output triples_classify(const Options& opt) {
    const ReflectionGroup g = build_group(parse_spec(opt.spec));
    const auto classes = classes_for(g, opt);
    Output o;
    o.doc = header("triples classify");
    o.doc["group"] = g.spec.name();
    o.doc["fix_first"] = opt.fix_first;
    std::size_t total = 0;
    o.doc["classes"] = json::array();
    o.csv.push_back({"index", "t1", "t2", "t3", "w", "x", "y", "p", "q", "multiplicity", "generated_order"});
    std::ostringstream t;
    for (std::size_t i = 0; i < classes.size(); ++i) {
        const auto& c = classes[i];
        total += c.multiplicity;
        o.doc["classes"].push_back(
            {{"fingerprint", io::to_json(c.fingerprint)}, {"multiplicity", c.multiplicity}, {"generated_order", c.generated_order}});
        const auto& f = c.fingerprint;
        o.csv.push_back({std::to_string(i), io::text(f.t1), io::text(f.t2), io::text(f.t3), io::text(f.w), io::text(f.x),
                         io::text(f.y), io::text(f.p), io::text(f.q), std::to_string(c.multiplicity),
                         std::to_string(c.generated_order)});
        t << i << ": (w,x,y,p,q) = (" << io::text(f.w) << ", " << io::text(f.x) << ", " << io::text(f.y) << ", "
          << io::text(f.p) << ", " << io::text(f.q) << ")  x" << c.multiplicity << "  generates " << c.generated_order << '\n';
    }
    o.doc["triples"] = total;
    o.doc["class_count"] = classes.size();
    o.text = std::to_string(classes.size()) + " classes from " + std::to_string(total) + " triples\n" + t.str();
    return o;
}

Output orbits_cmd(const Options& opt) {
    const ReflectionGroup g = build_group(parse_spec(opt.spec));
    const auto classes = classes_for(g, opt);
    const auto summaries = summarize_orbits(g, classes);
    Output o;
    o.doc = header("orbits");
    o.doc["group"] = g.spec.name();
    o.doc["fix_first"] = opt.fix_first;
    o.doc["class_count"] = classes.size();
    std::vector<std::size_t> partition;
    for (const auto& s : summaries) partition.push_back(s.members.size());
    std::sort(partition.begin(), partition.end());
    o.doc["partition"] = partition;
    o.doc["orbits"] = json::array();
    o.csv.push_back({"orbit", "size", "max_generated_order", "pure_size", "sigma1", "sigma2", "sigma_prod", "genus"});
    std::ostringstream t;
    t << g.spec.name() << ": " << classes.size() << " classes, B3-orbit sizes " << join(partition) << '\n';
    for (std::size_t i = 0; i < summaries.size(); ++i) {
        const auto& s = summaries[i];
        json e{{"size", s.members.size()}, {"members", s.members}, {"max_generated_order", s.max_generated_order}};
        std::vector<std::string> row{std::to_string(i), std::to_string(s.members.size()), std::to_string(s.max_generated_order)};
        t << "orbit " << i << ": size " << s.members.size() << ", max generated order " << s.max_generated_order;
        if (s.pure) {
            e["pure"] = io::to_json(*s.pure);
            row.push_back(std::to_string(s.pure->branches()));
            for (const auto& ct : s.pure->cycle_types) row.push_back(join(ct, " "));
            row.push_back(s.pure->genus ? std::to_string(*s.pure->genus) : "");
            t << "; P3 orbit " << s.pure->branches() << " with cycle types (" << join(s.pure->cycle_types[0]) << ") ("
              << join(s.pure->cycle_types[1]) << ") (" << join(s.pure->cycle_types[2]) << ")";
            if (s.pure->genus) t << ", genus " << *s.pure->genus;
        } else {
            row.insert(row.end(), {"", "", "", "", ""});
        }
        t << '\n';
        o.doc["orbits"].push_back(e);
        o.csv.push_back(row);
    }
    o.text = t.str();
    return o;
}

Output params_table() {
    Output o;
    o.doc = header("params table");
    o.doc["rows"] = json::array();
    o.csv.push_back({"group", "degrees", "theta", "computed_canonical", "matches"});
    std::ostringstream t;
    for (const auto& row : theta_table()) {
        o.doc["rows"].push_back(io::to_json(row));
        const std::string tab = row.tabulated ? row.tabulated->str() : "";
        o.csv.push_back({row.spec.name(), join({row.degrees[0], row.degrees[1], row.degrees[2]}, " "), tab, row.canonical.str(),
                         row.matches ? "yes" : "no"});
        t << row.spec.name() << "  degrees " << join({row.degrees[0], row.degrees[1], row.degrees[2]}) << "  theta " << tab
          << (row.matches ? "  (reproduced)" : "  (NOT reproduced: " + row.message + ")") << '\n';
    }
    o.text = t.str();
    return o;
}

Output params_theta(const Options& opt) {
    LambdaMu lm;
    std::string source;
    if (!opt.lambda.empty() || !opt.mu.empty()) {
        if (opt.lambda.empty() || opt.mu.empty()) throw UsageError("--lambda and --mu must be given together");
        lm.lambda = parse_triple(opt.lambda, "--lambda");
        lm.mu = parse_triple(opt.mu, "--mu");
        for (const auto& l : lm.lambda)
            if (l.is_integer()) throw UsageError("--lambda entries must be non-integral");
        source = "explicit";
    } else {
        lm = lambda_mu_of_triple(standard_generators(parse_spec(opt.spec)));
        source = parse_spec(opt.spec).name();
    }
    Output o;
    o.doc = header("params theta");
    o.doc["source"] = source;
    o.doc["lambda_mu"] = io::to_json(lm);
    o.doc["permutations"] = json::array();
    o.csv.push_back({"perm", "theta", "alpha", "beta", "gamma", "delta"});
    std::ostringstream t;
    t << "lambda = (" << lm.lambda[0] << ", " << lm.lambda[1] << ", " << lm.lambda[2] << "), mu = (" << lm.mu[0] << ", "
      << lm.mu[1] << ", " << lm.mu[2] << ")\n";
    for (const auto& perm : all_perms3()) {
        const Theta th = theta_map(lm, perm);
        const PviParams p = pvi_abcd(th);
        const std::string ps = join({perm[0] + 1, perm[1] + 1, perm[2] + 1}, "");
        o.doc["permutations"].push_back({{"perm", ps}, {"theta", io::to_json(th)}, {"abcd", io::to_json(p)}});
        o.csv.push_back({ps, th.str(), p.alpha.str(), p.beta.str(), p.gamma.str(), p.delta.str()});
        t << "mu order " << ps << ": theta " << th << "  (alpha,beta,gamma,delta) = (" << p.alpha << ", " << p.beta << ", "
          << p.gamma << ", " << p.delta << ")\n";
    }
    if (lm.sum_discrepancy().is_integer()) {
        const Theta c = canonical_theta(lm);
        o.doc["canonical"] = io::to_json(c);
        o.doc["canonical_abcd"] = io::to_json(pvi_abcd(c));
        json cands = json::array();
        for (const auto& th : theta_candidates(lm)) cands.push_back(th.str());
        o.doc["candidates"] = cands;
        t << "canonical " << c << '\n';
    }
    o.text = t.str();
    return o;
}

Output check_output(const std::string& command, const CheckResult& r) {
    Output o;
    o.doc = header(command);
    o.doc["result"] = io::to_json(r);
    o.csv = {{"check", "ok", "cases", "failures", "detail"},
             {r.name, r.ok ? "true" : "false", std::to_string(r.cases), std::to_string(r.failures), r.detail}};
    o.text = r.name + ": " + (r.ok ? "ok" : "FAILED") + " (" + std::to_string(r.cases) + " cases, " + std::to_string(r.failures) +
             " failures)" + (r.detail.empty() ? "" : " " + r.detail) + "\n";
    o.status = r.ok ? kOk : kCheckFailed;
    return o;
}

NumericOptions numeric_options(const Options& opt) {
    NumericOptions n;
    if (!opt.lambda.empty() || !opt.mu.empty()) {
        if (opt.lambda.empty() || opt.mu.empty()) throw UsageError("--lambda and --mu must be given together");
        n.lm.lambda = parse_triple(opt.lambda, "--lambda");
        n.lm.mu = parse_triple(opt.mu, "--mu");
        if (!n.lm.balanced()) throw UsageError("sum of --lambda must equal sum of --mu");
    }
    n.seed = opt.seed;
    n.t0 = opt.t0;
    n.t1 = opt.t1;
    n.tol = opt.tol;
    n.step = opt.step;
    try {
        check_path(straight_path(n.t0, n.t1));
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    return n;
}

Output numeric_output(const std::string& command, const NumericReport& rep, const CheckResult& r) {
    Output o = check_output(command, r);
    const auto& d = rep.drift;
    o.doc["drift"] = {{"spectral", d.spectral_drift}, {"b4", d.b4_drift}, {"tr_b4_powers", d.tr_b4_powers_drift},
                      {"w_plus_x_plus_y", d.wxy_drift}, {"f_squared", d.f2_mismatch}};
    o.doc["reduced_flow"] = {{"max_deviation", rep.reduced.max_deviation}, {"sign_flags", rep.reduced.flagged.size()}};
    o.doc["steps"] = {{"accepted", rep.trajectory.accepted_steps}, {"rejected", rep.trajectory.rejected_steps}};
    json slots = json::array();
    for (const auto& s : rep.slots) {
        json e{{"slot", std::to_string(s.i + 1) + std::to_string(s.j + 1)}, {"skipped", s.skipped}};
        if (s.skipped) {
            e["diagnostic"] = s.diagnostic;
        } else {
            const auto& p = all_perms3()[static_cast<std::size_t>(s.best_perm)];
            e["best_perm"] = join({p[0] + 1, p[1] + 1, p[2] + 1}, "");
            e["residuals"] = s.residual;
        }
        slots.push_back(e);
    }
    o.doc["eta_slots"] = slots;
    std::ostringstream csv;
    write_trajectory_csv(csv, rep.trajectory);
    o.csv.clear();
    std::ostringstream summary;
    summary << std::scientific << std::setprecision(2) << "spectral drift " << d.spectral_drift << ", reduced-flow deviation "
            << rep.reduced.max_deviation << ", f^2 mismatch " << d.f2_mismatch << '\n';
    o.text += summary.str();
    for (const auto& s : rep.slots) {
        if (s.skipped) {
            o.text += "slot " + std::to_string(s.i + 1) + std::to_string(s.j + 1) + ": skipped (" + s.diagnostic + ")\n";
            continue;
        }
        const auto& p = all_perms3()[static_cast<std::size_t>(s.best_perm)];
        std::ostringstream line;
        line << "slot " << s.i + 1 << s.j + 1 << ": best mu order " << p[0] + 1 << p[1] + 1 << p[2] + 1 << " residual " << s.best()
             << '\n';
        o.text += line.str();
    }
    o.doc["_trajectory_csv"] = csv.str();
    return o;
}

Output reproduce_klein_cmd(const Options& opt) {
    const KleinReport k = reproduce_klein(opt.jobs);
    Output o;
    o.doc = header("reproduce klein");
    o.doc["order"] = k.order;
    o.doc["reflections"] = k.reflections;
    o.doc["all_reflections_order_two"] = k.all_order_two;
    o.doc["triples"] = k.triples;
    o.doc["class_count"] = k.classes.size();
    o.doc["partition"] = k.partition;
    json orbits = json::array();
    bool generating_ok = true;
    for (const auto& s : k.orbits) {
        const bool generating = s.max_generated_order == k.order;
        if (generating != (s.members.size() == 7)) generating_ok = false;
        json e{{"size", s.members.size()}, {"max_generated_order", s.max_generated_order}};
        if (s.pure) e["pure"] = io::to_json(*s.pure);
        orbits.push_back(e);
    }
    o.doc["orbits"] = orbits;
    o.doc["standard_triple_pure_orbit"] = io::to_json(k.standard_pure);
    o.doc["theta"] = io::to_json(k.theta_row);
    const Theta th = k.theta_row.tabulated ? *k.theta_row.tabulated : k.theta_row.canonical;
    o.doc["abcd"] = io::to_json(pvi_abcd(th));

    const std::vector<std::size_t> expected{1, 1, 3, 3, 4, 4, 6, 7, 7, 9};
    const auto& sp = k.standard_pure;
    const Partition p322{3, 2, 2};
    const bool ok = k.order == 336 && k.reflections == 21 && k.all_order_two && k.triples == 441 && k.classes.size() == 45 &&
                    k.partition == expected && generating_ok && sp.branches() == 7 && sp.cycle_types[0] == p322 &&
                    sp.cycle_types[1] == p322 && sp.cycle_types[2] == p322 && sp.genus == 0 && k.theta_row.matches;
    o.doc["ok"] = ok;
    o.status = ok ? kOk : kCheckFailed;
    o.csv = {{"quantity", "value"},
             {"order", std::to_string(k.order)},
             {"reflections", std::to_string(k.reflections)},
             {"triples", std::to_string(k.triples)},
             {"classes", std::to_string(k.classes.size())},
             {"partition", join(k.partition, " ")},
             {"pure_orbit_size", std::to_string(sp.branches())},
             {"cycle_types", join(sp.cycle_types[0], " ") + "; " + join(sp.cycle_types[1], " ") + "; " + join(sp.cycle_types[2], " ")},
             {"genus", sp.genus ? std::to_string(*sp.genus) : ""},
             {"theta", th.str()}};
    std::ostringstream t;
    t << "G336: order " << k.order << ", " << k.reflections << " reflections (all of order two: " << (k.all_order_two ? "yes" : "no")
      << ")\n"
      << k.triples << " triples (r1, a, b) fall into " << k.classes.size() << " classes\n"
      << "B3-orbit sizes: " << join(k.partition) << '\n'
      << "standard triple: P3 orbit of size " << sp.branches() << ", cycle types (" << join(sp.cycle_types[0]) << ") ("
      << join(sp.cycle_types[1]) << ") (" << join(sp.cycle_types[2]) << "), genus " << (sp.genus ? std::to_string(*sp.genus) : "-")
      << '\n';
    const PviParams ab = pvi_abcd(th);
    t << "theta " << th << ", (alpha,beta,gamma,delta) = (" << ab.alpha << ", " << ab.beta << ", " << ab.gamma << ", " << ab.delta
      << ")\n"
      << (ok ? "all checks passed" : "CHECK FAILED") << '\n';
    o.text = t.str();
    return o;
}

std::string extension(const std::string& format) { return format == "text" ? "txt" : format; }

void emit(const Output& o, const Options& opt, const std::string& command) {
    std::string body;
    json doc = o.doc;
    std::string trajectory_csv;
    if (doc.contains("_trajectory_csv")) {
        trajectory_csv = doc["_trajectory_csv"].get<std::string>();
        doc.erase("_trajectory_csv");
    }
    if (opt.format == "json")
        body = doc.dump(2) + "\n";
    else if (opt.format == "csv")
        body = trajectory_csv.empty() ? io::render_csv(o.csv) : trajectory_csv;
    else
        body = o.text;

    std::filesystem::path target;
    const char* env = std::getenv("CRPVI_OUTPUT_DIR");
    if (!opt.out.empty()) {
        target = opt.out;
        if (target.is_relative() && env && *env) target = std::filesystem::path(env) / target;
    } else if (env && *env) {
        std::string name = command;
        std::replace(name.begin(), name.end(), ' ', '_');
        target = std::filesystem::path(env) / (name + "." + extension(opt.format));
    }
    if (target.empty()) {
        std::cout << body;
        return;
    }
    if (target.has_parent_path()) std::filesystem::create_directories(target.parent_path());
    std::ofstream f(target);
    if (!f) throw std::runtime_error("cannot write " + target.string());
    f << body;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Reflection-group triples, braid orbits and Painleve VI parameters"};
    app.require_subcommand(1);
    Options opt;
    auto add_common = [&](CLI::App* c) {
        c->add_option("--format", opt.format, "Output format")->check(CLI::IsMember({"json", "csv", "text"}));
        c->add_option("--out", opt.out, "Output file (relative to $CRPVI_OUTPUT_DIR when set)");
    };
    auto add_spec = [&](CLI::App* c) { c->add_option("--spec", opt.spec, "Group: G(m,1,3), G(m,m,3), icosahedral, G336, G648, G1296, G2160"); };
    auto add_jobs = [&](CLI::App* c) { c->add_option("--jobs", opt.jobs, "Worker threads")->check(CLI::Range(1u, 256u)); };
    auto add_numeric = [&](CLI::App* c) {
        c->add_option("--seed", opt.seed, "Random seed");
        c->add_option("--tol", opt.tol, "Local error tolerance")->check(CLI::PositiveNumber);
        c->add_option("--step", opt.step, "Sampling step along the path")->check(CLI::PositiveNumber);
        c->add_option("--t0", opt.t0, "Start of the real path");
        c->add_option("--t1", opt.t1, "End of the real path");
        c->add_option("--lambda", opt.lambda, "lambda1,lambda2,lambda3");
        c->add_option("--mu", opt.mu, "mu1,mu2,mu3");
    };

    std::string command;
    auto* groups = app.add_subcommand("groups", "Group catalogue");
    groups->require_subcommand(1);
    auto* g_list = groups->add_subcommand("list", "List supported groups");
    add_common(g_list);
    auto* g_info = groups->add_subcommand("info", "Build a group and report its invariants");
    add_common(g_info);
    add_spec(g_info);

    auto* triples = app.add_subcommand("triples", "Reflection triples");
    triples->require_subcommand(1);
    auto* t_classify = triples->add_subcommand("classify", "Classes of reflection triples up to conjugacy");
    add_common(t_classify);
    add_spec(t_classify);
    add_jobs(t_classify);
    t_classify->add_flag("--fix-first", opt.fix_first, "Fix r1 to the first standard generator");

    auto* orbits = app.add_subcommand("orbits", "Braid-group orbits on triple classes");
    add_common(orbits);
    add_spec(orbits);
    add_jobs(orbits);
    orbits->add_flag("--fix-first", opt.fix_first, "Fix r1 to the first standard generator");

    auto* params = app.add_subcommand("params", "Painleve VI parameters");
    params->require_subcommand(1);
    auto* p_table = params->add_subcommand("table", "Theta tuples of standard generating triples");
    add_common(p_table);
    auto* p_theta = params->add_subcommand("theta", "Theta and (alpha,beta,gamma,delta) for one group or explicit exponents");
    add_common(p_theta);
    add_spec(p_theta);
    p_theta->add_option("--lambda", opt.lambda, "lambda1,lambda2,lambda3");
    p_theta->add_option("--mu", opt.mu, "mu1,mu2,mu3");

    auto* verify = app.add_subcommand("verify", "Self-checks; exit status 1 on failure");
    verify->require_subcommand(1);
    auto* v_lemma = verify->add_subcommand("lemma-params", "f^2 equals the shifted Hitchin cubic for random exponents");
    auto* v_cubic = verify->add_subcommand("cubic", "Cubic constants against sampled rank-one configurations");
    for (auto* c : {v_lemma, v_cubic}) {
        add_common(c);
        c->add_option("--seed", opt.seed, "Random seed");
        c->add_option("--samples", opt.samples, "Number of samples")->check(CLI::PositiveNumber);
    }
    auto* v_schl = verify->add_subcommand("schlesinger", "Integrate the Schlesinger flow and check conserved quantities");
    auto* v_eta = verify->add_subcommand("eta-pvi", "Check that the eta_ij satisfy Painleve VI");
    for (auto* c : {v_schl, v_eta}) {
        add_common(c);
        add_numeric(c);
    }

    auto* reproduce = app.add_subcommand("reproduce", "End-to-end pipelines");
    reproduce->require_subcommand(1);
    auto* r_klein = reproduce->add_subcommand("klein", "Triples, orbits, branching and parameters for G336");
    add_common(r_klein);
    add_jobs(r_klein);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kOk : kUsage;
    }

    try {
        Output out;
        if (g_list->parsed()) command = "groups list", out = groups_list();
        else if (g_info->parsed()) command = "groups info", out = groups_info(opt);
        else if (t_classify->parsed()) command = "triples classify", out = triples_classify(opt);
        else if (orbits->parsed()) command = "orbits", out = orbits_cmd(opt);
        else if (p_table->parsed()) command = "params table", out = params_table();
        else if (p_theta->parsed()) command = "params theta", out = params_theta(opt);
        else if (v_lemma->parsed()) command = "verify lemma-params", out = check_output(command, verify_lemma_params(opt.samples, opt.seed));
        else if (v_cubic->parsed()) command = "verify cubic", out = check_output(command, verify_cubic(opt.samples, opt.seed));
        else if (v_schl->parsed() || v_eta->parsed()) {
            command = v_schl->parsed() ? "verify schlesinger" : "verify eta-pvi";
            const NumericReport rep = run_numeric(numeric_options(opt));
            out = numeric_output(command, rep, v_schl->parsed() ? verify_schlesinger(rep) : verify_eta_pvi(rep));
        } else if (r_klein->parsed()) command = "reproduce klein", out = reproduce_klein_cmd(opt);
        emit(out, opt, command);
        return out.status;
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return kUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kCheckFailed;
    }
}
