#include "frost/cli.hpp"

#include <fstream>
#include <functional>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"

#include "frost/json_io.hpp"

namespace frost {

namespace {

constexpr int kOk = 0;
constexpr int kInvariant = 2;
constexpr int kRefuted = 3;
constexpr int kBadInput = 4;
constexpr int kUsage = 64;

std::vector<Rat> parse_ratio_list(const std::string& s) {
    std::vector<Rat> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ','))
        out.push_back(Rat::from_string(item));
    if (out.empty())
        throw ParseError("empty ratio list");
    return out;
}

std::vector<long> parse_level_list(const std::string& s) {
    std::vector<long> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ','))
        out.push_back(std::stol(item));
    if (out.empty())
        throw ParseError("empty level list");
    return out;
}

std::vector<int> parse_bits(const std::string& s) {
    std::vector<int> out;
    for (char c : s) {
        if (c != '0' && c != '1')
            throw ParseError("bit strings may only contain 0 and 1");
        out.push_back(c == '1' ? 1 : 0);
    }
    return out;
}

void write_csv(const std::string& path, const std::string& body, std::ostream& out) {
    if (path.empty()) {
        out << body;
        return;
    }
    std::ofstream f(path);
    if (!f)
        throw Error("cannot write file: " + path);
    f << body;
}

Json frost_certificate(const Rat& s, long depth, long k, bool found, const Rat& bound) {
    Json cert;
    cert["s"] = s.str();
    cert["depth"] = depth;
    cert["k"] = k;
    cert["verdict"] = found ? "found" : "refuted";
    cert["bound"] = bound.str();
    return cert;
}

// Minimal explicit serialization of a stage-free closed/overt pair, listing
// only exclusions whose parent is not itself excluded.
ExplicitName explicit_from_name(const ClosedOvertName& name, long depth, long stage) {
    ExplicitName out;
    std::vector<Word> excl;
    std::function<void(const Word&)> walk = [&](const Word& w) {
        if (name.closed.excluded(w, stage)) {
            excl.push_back(w);
            return;
        }
        if (w.depth() < depth) {
            walk(w.child(0));
            walk(w.child(1));
        }
    };
    walk(Word());
    if (!excl.empty())
        out.excluded.emplace_back(stage, std::move(excl));
    std::vector<Word> cert = name.overt.words(stage);
    if (!cert.empty())
        out.certified.emplace_back(stage, std::move(cert));
    return out;
}

struct Options {
    std::string set_file, cap_file, measure_file, cell_file;
    std::string out_file, csv_file, witness_file, support_out;
    std::string s = "1/1", ratios, p_bits, chain, levels, strategy = "left";
    std::string lo_threshold, hi_threshold;
    long depth = 0, stage = -1, grid = 8, k = 0, budget = 10, iterations = -1, level = -1;
    bool support_closed_form = false;
};

long effective_stage(const Options& o) { return o.stage >= 0 ? o.stage : o.depth; }

SplitStrategy strategy_of(const Options& o) {
    if (o.strategy == "left")
        return SplitStrategy::LeftGreedy;
    if (o.strategy == "proportional")
        return SplitStrategy::Proportional;
    throw ParseError("strategy must be \"left\" or \"proportional\"");
}

int run_cantor(const Options& o, std::ostream& out) {
    std::vector<Rat> ds = parse_ratio_list(o.ratios);
    for (const Rat& d : ds)
        if (d < Rat(2))
            throw InvariantError("cantor ratio below 2: " + d.str());
    CantorScheme scheme = CantorScheme::from_ratios(ds);
    std::string body = "word,lo,hi\n";
    std::vector<Interval> cells = cantor_cells(scheme, o.depth);
    std::vector<Word> words = words_at_depth(o.depth);
    for (std::size_t i = 0; i < cells.size(); ++i)
        body += words[i].bits() + "," + cells[i].lo.str() + "," + cells[i].hi.str() + "\n";
    write_csv(o.csv_file, body, out);
    if (!o.out_file.empty())
        write_json_file(o.out_file, cantor_set_to_json(ds));
    return kOk;
}

int run_content(const Options& o, std::ostream& out) {
    LoadedSet set = parse_set(read_json_file(o.set_file));
    long stage = effective_stage(o);
    if (o.csv_file.empty()) {
        Rat c = dyadic_content(set.name.closed, Rat::from_string(o.s), o.depth, stage);
        out << c.str() << "\n";
        return kOk;
    }
    std::string body = "s,content\n";
    for (long j = 0; j <= o.grid; ++j) {
        Rat s(j, o.grid);
        body += s.str() + "," + dyadic_content(set.name.closed, s, o.depth, stage).str() + "\n";
    }
    write_csv(o.csv_file, body, out);
    return kOk;
}

int run_dim(const Options& o, std::ostream& out) {
    LoadedSet set = parse_set(read_json_file(o.set_file));
    long stage = effective_stage(o);
    DimEstimate est;
    if (!o.lo_threshold.empty() || !o.hi_threshold.empty()) {
        Rat lo = o.lo_threshold.empty() ? Rat(1, 2) : Rat::from_string(o.lo_threshold);
        Rat hi = o.hi_threshold.empty() ? Rat::pow2(-(o.depth / 4)) : Rat::from_string(o.hi_threshold);
        est = dim_interval(set.name.closed, o.depth, stage, o.grid, lo, hi);
    } else {
        est = dim_interval(set.name.closed, o.depth, stage, o.grid);
    }
    out << "lo=" << est.lo.str() << " hi=" << est.hi.str() << " depth=" << est.depth
        << " stage=" << est.stage << "\n";
    return kOk;
}

int run_frost(const Options& o, std::ostream& out) {
    LoadedSet set = parse_set(read_json_file(o.set_file));
    FrostmanTask task{set.name.closed, Rat::from_string(o.s), o.depth, effective_stage(o), o.k};
    FrostResult res = frost(task);
    Json cert = frost_certificate(task.s, task.depth, task.k, res.found, res.bound);
    if (res.found) {
        Json j = measure_to_json(res.measure);
        j["certificate"] = cert;
        if (!o.out_file.empty())
            write_json_file(o.out_file, j);
        out << "found value=" << res.bound.str() << "\n";
        return kOk;
    }
    if (!o.out_file.empty()) {
        Json j;
        j["certificate"] = cert;
        write_json_file(o.out_file, j);
    }
    out << "refuted bound=" << res.bound.str() << "\n";
    return kRefuted;
}

int run_strict_frost(const Options& o, std::ostream& out) {
    LoadedSet set = parse_set(read_json_file(o.set_file));
    if (!set.scheme)
        throw InvariantError("strict-frost needs a cantor set file");
    DyadicMeasure mu = strict_frost(*set.scheme, Rat::from_string(o.s), o.depth);
    Json j = measure_to_json(mu);
    j["certificate"] = frost_certificate(Rat::from_string(o.s), o.depth, 0, true, mu.total());
    if (!o.out_file.empty())
        write_json_file(o.out_file, j);
    out << "found value=" << mu.total().str() << "\n";
    return kOk;
}

int run_support(const Options& o, std::ostream& out) {
    DyadicMeasure mu = parse_measure(read_json_file(o.measure_file));
    long stage = o.stage >= 0 ? o.stage : mu.depth;
    OvertSetName overt = support_overt(mu);
    std::vector<Word> words = overt.words(stage);
    Json arr = Json::array();
    for (const Word& w : words)
        arr.push_back(w.bits());
    out << arr.dump() << "\n";
    if (!o.out_file.empty()) {
        ExplicitName n;
        n.certified.emplace_back(stage, words);
        write_json_file(o.out_file, explicit_name_to_json(n));
    }
    return kOk;
}

int run_concentrate(const Options& o, std::ostream& out) {
    DyadicMeasure mu = parse_measure(read_json_file(o.measure_file));
    ConcentrateResult res = concentrate(mu);
    out << "k=" << res.k << " scale=" << res.scale.str() << " total=" << res.nu.total().str()
        << "\n";
    if (!o.out_file.empty()) {
        Json j = measure_to_json(res.nu);
        Json conc;
        conc["k"] = res.k;
        conc["scale"] = res.scale.str();
        j["concentration"] = conc;
        write_json_file(o.out_file, j);
    }
    if (!o.support_out.empty()) {
        ClosedOvertName name = concentrated_support(res.nu, res.scale);
        write_json_file(o.support_out,
                        explicit_name_to_json(explicit_from_name(name, res.nu.depth, res.nu.depth)));
    }
    return kOk;
}

int run_perfect_core(const Options& o, std::ostream& out) {
    LoadedSet set = parse_set(read_json_file(o.set_file));
    PerfectCoreResult res = perfect_core(set.name.closed, o.budget);
    out << "decisions=" << res.decisions.size() << " added=" << res.added.size() << "\n";
    for (const AddedPoint& p : res.added)
        out << "x=" << p.x.str() << " cell=" << p.cell.bits() << " stage=" << p.stage << "\n";
    if (!o.out_file.empty()) {
        ExplicitName n;
        for (const auto& [w, stage, cert] : res.decisions) {
            auto& target = cert ? n.certified : n.excluded;
            if (!target.empty() && target.back().first == stage)
                target.back().second.push_back(w);
            else
                target.emplace_back(stage, std::vector<Word>{w});
        }
        write_json_file(o.out_file, explicit_name_to_json(n));
    }
    return kOk;
}

int run_maxflow(const Options& o, std::ostream& out) {
    CapacityTree cap = parse_capacity(read_json_file(o.cap_file));
    if (o.iterations >= 0) {
        WordMap a = max_flow_iterate(cap, o.iterations);
        auto it = a.find(Word());
        out << (it == a.end() ? Rat(0) : it->second).str() << "\n";
        return kOk;
    }
    if (o.k > 0) {
        NonZeroFlowResult res = nonzero_flow_search(cap, o.k, strategy_of(o));
        if (res.found) {
            out << "found root=" << Rat::pow2(-o.k).str() << "\n";
            if (!o.witness_file.empty())
                write_json_file(o.witness_file, flow_to_json(res.witness));
            return kOk;
        }
        out << "refuted bound=" << res.bound.str() << "\n";
        return kOk;
    }
    MaxFlowResult res = truncated_max_flow(cap, strategy_of(o));
    out << res.value.str() << "\n";
    if (!o.witness_file.empty())
        write_json_file(o.witness_file, flow_to_json(res.witness));
    return kOk;
}

int run_check_frostman(const Options& o, std::ostream& out) {
    Json j = read_json_file(o.measure_file);
    DyadicMeasure mu = parse_measure(j);
    long depth = o.depth > 0 ? o.depth : mu.depth;
    std::vector<Word> violations = frostman_check(mu, Rat::from_string(o.s), depth);
    if (violations.empty()) {
        out << "ok\n";
        return kOk;
    }
    for (const Word& w : violations)
        out << "violation word=" << w.bits() << " mass=" << mu.at(w).str() << " bound="
            << Rat::pow2(-ceil_mul(Rat::from_string(o.s), w.depth())).str() << "\n";
    return kInvariant;
}

int run_shmerkin(const Options& o, std::ostream& out) {
    std::vector<Rat> ds = parse_ratio_list(o.ratios);
    std::vector<int> bits = parse_bits(o.p_bits);
    CantorScheme scheme = CantorScheme::from_ratios(ds);
    CellMeasure cm = shmerkin_measure(bits, scheme, o.depth);
    if (!o.out_file.empty())
        write_json_file(o.out_file, cell_measure_to_json(cm, ds, bits));
    if (o.level >= 0) {
        std::string body = "word,mass\n";
        for (const auto& [w, v] : cm.level_masses(o.level))
            body += w.bits() + "," + v.str() + "\n";
        write_csv(o.csv_file, body, out);
    } else {
        Rat total(0);
        for (const auto& [w, v] : cm.level_masses(std::min<long>(o.depth, 12)))
            total += v;
        out << "levels=" << o.depth << " total-at-level-" << std::min<long>(o.depth, 12) << "="
            << total.str() << "\n";
    }
    return kOk;
}

int run_local_dim(const Options& o, std::ostream& out) {
    std::vector<long> levels = parse_level_list(o.levels);
    std::vector<LocalDimRow> rows;
    if (!o.cell_file.empty()) {
        CellMeasure cm = parse_cell_measure(read_json_file(o.cell_file));
        if (o.support_closed_form) {
            rows = local_dimension_on_support(cm.scheme(), levels);
        } else {
            rows = local_dimension(cm, Word::from_string(o.chain), levels);
        }
    } else if (!o.measure_file.empty()) {
        DyadicMeasure mu = parse_measure(read_json_file(o.measure_file));
        rows = local_dimension(mu, Word::from_string(o.chain), levels);
    } else {
        throw ParseError("local-dim needs --measure or --cell-measure");
    }
    std::ostringstream body;
    body << "level,ratio_approx\n";
    body.precision(12);
    for (const LocalDimRow& r : rows)
        body << r.level << "," << r.ratio << "\n";
    write_csv(o.csv_file, body.str(), out);
    return kOk;
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"exact dyadic flows, Frostman measures and Hausdorff content"};
    app.require_subcommand(1);
    Options o;

    CLI::App* cantor = app.add_subcommand("cantor", "emit the cells of a Cantor scheme");
    cantor->add_option("--ratios", o.ratios, "comma-separated ratios, last repeats")->required();
    cantor->add_option("--depth", o.depth)->required();
    cantor->add_option("--out", o.out_file, "write a cantor set file");
    cantor->add_option("--csv", o.csv_file);

    CLI::App* content = app.add_subcommand("content", "dyadic s-dimensional Hausdorff content");
    content->add_option("--set", o.set_file)->required();
    content->add_option("--s", o.s);
    content->add_option("--depth", o.depth)->required();
    content->add_option("--stage", o.stage, "defaults to the depth");
    content->add_option("--grid", o.grid, "grid for --csv sweeps");
    content->add_option("--csv", o.csv_file, "write an (s, content) table");

    CLI::App* dim = app.add_subcommand("dim", "dimension bracket by content bisection");
    dim->add_option("--set", o.set_file)->required();
    dim->add_option("--depth", o.depth)->required();
    dim->add_option("--stage", o.stage);
    dim->add_option("--grid", o.grid);
    dim->add_option("--lo-threshold", o.lo_threshold);
    dim->add_option("--hi-threshold", o.hi_threshold);

    CLI::App* frost_cmd = app.add_subcommand("frost", "Frostman measure supported inside a set");
    frost_cmd->add_option("--set", o.set_file)->required();
    frost_cmd->add_option("--s", o.s)->required();
    frost_cmd->add_option("--k", o.k)->required();
    frost_cmd->add_option("--depth", o.depth)->required();
    frost_cmd->add_option("--stage", o.stage);
    frost_cmd->add_option("--out", o.out_file);

    CLI::App* strict = app.add_subcommand("strict-frost", "Frostman measure with full support");
    strict->add_option("--set", o.set_file)->required();
    strict->add_option("--s", o.s)->required();
    strict->add_option("--depth", o.depth)->required();
    strict->add_option("--out", o.out_file);

    CLI::App* support = app.add_subcommand("support", "overt support of a measure");
    support->add_option("--measure", o.measure_file)->required();
    support->add_option("--stage", o.stage);
    support->add_option("--out", o.out_file, "write an explicit set file");

    CLI::App* conc = app.add_subcommand("concentrate", "extract a concentrated sub-measure");
    conc->add_option("--measure", o.measure_file)->required();
    conc->add_option("--out", o.out_file);
    conc->add_option("--support-out", o.support_out, "write the closed-and-overt support name");

    CLI::App* pc = app.add_subcommand("perfect-core", "closed set plus isolated rationals");
    pc->add_option("--set", o.set_file)->required();
    pc->add_option("--budget", o.budget)->required();
    pc->add_option("--out", o.out_file);

    CLI::App* mf = app.add_subcommand("maxflow", "max flow on a capacity tree");
    mf->add_option("--cap", o.cap_file)->required();
    mf->add_option("--witness", o.witness_file);
    mf->add_option("--iterations", o.iterations, "run the min-iteration instead of the DP");
    mf->add_option("--k", o.k, "search for a flow of value 2^-k");
    mf->add_option("--strategy", o.strategy, "left or proportional");

    CLI::App* check = app.add_subcommand("check-frostman", "dyadic Frostman audit");
    check->add_option("--measure", o.measure_file)->required();
    check->add_option("--s", o.s)->required();
    check->add_option("--depth", o.depth);

    CLI::App* shm = app.add_subcommand("shmerkin", "square-level fiber measure on a scheme");
    shm->add_option("--ratios", o.ratios)->required();
    shm->add_option("--p", o.p_bits)->required();
    shm->add_option("--depth", o.depth)->required();
    shm->add_option("--out", o.out_file);
    shm->add_option("--level", o.level, "print the masses of one level");
    shm->add_option("--csv", o.csv_file);

    CLI::App* ld = app.add_subcommand("local-dim", "log mass / log length along a chain");
    ld->add_option("--measure", o.measure_file);
    ld->add_option("--cell-measure", o.cell_file);
    ld->add_option("--chain", o.chain);
    ld->add_option("--levels", o.levels)->required();
    ld->add_flag("--support", o.support_closed_form,
                 "closed-form evaluation on a support chain (cell measures)");
    ld->add_option("--csv", o.csv_file);

    std::vector<const char*> argv;
    argv.push_back("frost");
    for (const std::string& a : args)
        argv.push_back(a.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << "\n";
        return kUsage;
    }

    try {
        if (cantor->parsed())
            return run_cantor(o, out);
        if (content->parsed())
            return run_content(o, out);
        if (dim->parsed())
            return run_dim(o, out);
        if (frost_cmd->parsed())
            return run_frost(o, out);
        if (strict->parsed())
            return run_strict_frost(o, out);
        if (support->parsed())
            return run_support(o, out);
        if (conc->parsed())
            return run_concentrate(o, out);
        if (pc->parsed())
            return run_perfect_core(o, out);
        if (mf->parsed())
            return run_maxflow(o, out);
        if (check->parsed())
            return run_check_frostman(o, out);
        if (shm->parsed())
            return run_shmerkin(o, out);
        if (ld->parsed())
            return run_local_dim(o, out);
        err << "usage error: no verb\n";
        return kUsage;
    } catch (const ParseError& e) {
        err << "input error: " << e.what() << "\n";
        return kBadInput;
    } catch (const InvariantError& e) {
        err << "invariant violation: " << e.what() << "\n";
        return kInvariant;
    } catch (const StageExhausted& e) {
        err << "stage budget exhausted: " << e.what() << "\n";
        return kInvariant;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kInvariant;
    }
}

} // namespace frost
