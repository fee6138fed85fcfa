#include "frost/json_io.hpp"

#include <fstream>

namespace frost {

namespace {

Rat rat_field(const Json& j) {
    if (!j.is_string())
        throw ParseError("rationals must be strings like \"3/4\"");
    return Rat::from_string(j.get<std::string>());
}

Word word_field(const Json& j) {
    if (!j.is_string())
        throw ParseError("words must be bit strings");
    return Word::from_string(j.get<std::string>());
}

StagedWords staged_words(const Json& j, const char* what) {
    StagedWords out;
    if (!j.is_array())
        throw ParseError(std::string(what) + " must be an array of [stage, [words...]] pairs");
    for (const Json& entry : j) {
        if (!entry.is_array() || entry.size() != 2 || !entry[1].is_array())
            throw ParseError(std::string(what) + " entries must be [stage, [words...]] pairs");
        long stage = entry[0].is_number_integer() ? entry[0].get<long>()
                                                  : std::stol(entry[0].get<std::string>());
        std::vector<Word> ws;
        for (const Json& w : entry[1])
            ws.push_back(word_field(w));
        out.emplace_back(stage, std::move(ws));
    }
    return out;
}

std::vector<Rat> ratio_list(const Json& j) {
    if (!j.is_array() || j.empty())
        throw ParseError("\"ratios\" must be a non-empty array of rationals");
    std::vector<Rat> ds;
    for (const Json& r : j)
        ds.push_back(rat_field(r));
    return ds;
}

WordMap entries_map(const Json& j, long depth, const char* what) {
    WordMap m;
    if (!j.is_array())
        throw ParseError(std::string(what) + " must be an array of [word, value] pairs");
    for (const Json& e : j) {
        if (!e.is_array() || e.size() != 2)
            throw ParseError(std::string(what) + " entries must be [word, value] pairs");
        Word w = word_field(e[0]);
        if (w.depth() > depth)
            throw InvariantError("entry word \"" + w.bits() + "\" deeper than the declared depth");
        Rat v = rat_field(e[1]);
        if (v.sign() < 0)
            throw InvariantError("negative value at \"" + w.bits() + "\"");
        if (m.count(w))
            throw ParseError("duplicate entry for word \"" + w.bits() + "\"");
        if (!v.is_zero())
            m.emplace(std::move(w), std::move(v));
    }
    return m;
}

Json map_to_entries(const WordMap& m) {
    Json out = Json::array();
    for (const auto& [w, v] : m)
        out.push_back(Json::array({w.bits(), v.str()}));
    return out;
}

} // namespace

LoadedSet parse_set(const Json& j) {
    if (!j.is_object() || !j.contains("kind"))
        throw ParseError("set file needs a \"kind\" field");
    std::string kind = j.at("kind").get<std::string>();
    if (kind == "cantor") {
        std::vector<Rat> ds = ratio_list(j.at("ratios"));
        for (const Rat& d : ds)
            if (d < Rat(2))
                throw InvariantError("cantor ratio below 2: " + d.str());
        CantorScheme scheme = CantorScheme::from_ratios(ds);
        return LoadedSet{scheme, closed_overt_name(scheme)};
    }
    if (kind == "explicit") {
        ExplicitName n;
        if (j.contains("excluded"))
            n.excluded = staged_words(j.at("excluded"), "\"excluded\"");
        if (j.contains("certified"))
            n.certified = staged_words(j.at("certified"), "\"certified\"");
        return LoadedSet{std::nullopt, n.name()};
    }
    if (kind == "full")
        return LoadedSet{std::nullopt, full_name()};
    if (kind == "point") {
        Rat x = rat_field(j.at("x"));
        std::string variant = j.contains("variant") ? j.at("variant").get<std::string>() : "chain";
        if (variant == "chain")
            return LoadedSet{std::nullopt, point_chain_name(x)};
        if (variant == "strict")
            return LoadedSet{std::nullopt,
                             ClosedOvertName{point_closed_name_strict(x),
                                             OvertSetName{[](long) { return std::vector<Word>{}; }}}};
        throw ParseError("point variant must be \"chain\" or \"strict\"");
    }
    throw ParseError("unknown set kind: \"" + kind + "\"");
}

Json explicit_name_to_json(const ExplicitName& n) {
    auto staged = [](const StagedWords& sw) {
        Json arr = Json::array();
        for (const auto& [stage, ws] : sw) {
            Json words = Json::array();
            for (const Word& w : ws)
                words.push_back(w.bits());
            arr.push_back(Json::array({stage, std::move(words)}));
        }
        return arr;
    };
    Json j;
    j["kind"] = "explicit";
    j["excluded"] = staged(n.excluded);
    j["certified"] = staged(n.certified);
    return j;
}

Json cantor_set_to_json(const std::vector<Rat>& ratios) {
    Json j;
    j["kind"] = "cantor";
    Json ds = Json::array();
    for (const Rat& d : ratios)
        ds.push_back(d.str());
    j["ratios"] = std::move(ds);
    return j;
}

CapacityTree parse_capacity(const Json& j) {
    CapacityTree t;
    t.depth = j.at("depth").get<long>();
    if (t.depth < 0)
        throw InvariantError("negative depth");
    if (j.contains("entries"))
        t.cap = entries_map(j.at("entries"), t.depth, "\"entries\"");
    return t;
}

Json capacity_to_json(const CapacityTree& t) {
    Json j;
    j["depth"] = t.depth;
    j["entries"] = map_to_entries(t.cap);
    return j;
}

TreeFlow parse_flow(const Json& j) {
    TreeFlow f;
    f.depth = j.at("depth").get<long>();
    if (f.depth < 0)
        throw InvariantError("negative depth");
    if (j.contains("entries"))
        f.flow = entries_map(j.at("entries"), f.depth, "\"entries\"");
    f.validate();
    return f;
}

Json flow_to_json(const TreeFlow& f) {
    Json j;
    j["depth"] = f.depth;
    j["entries"] = map_to_entries(f.flow);
    return j;
}

DyadicMeasure parse_measure(const Json& j, bool enforce_additive) {
    DyadicMeasure mu;
    mu.depth = j.at("depth").get<long>();
    if (mu.depth < 0)
        throw InvariantError("negative depth");
    if (j.contains("mass"))
        mu.mass = entries_map(j.at("mass"), mu.depth, "\"mass\"");

    // derive omitted ancestors of listed words by additivity
    for (long level = mu.depth - 1; level >= 0; --level) {
        std::vector<std::pair<Word, Rat>> derived;
        for (const auto& [w, v] : mu.mass) {
            if (w.depth() != level + 1 || v.sign() <= 0)
                continue;
            Word parent = w.parent();
            if (mu.mass.count(parent))
                continue;
            Rat sum = mu.at(parent.child(0)) + mu.at(parent.child(1));
            derived.emplace_back(parent, std::move(sum));
        }
        for (auto& [w, v] : derived)
            mu.mass.emplace(std::move(w), std::move(v));
    }

    if (j.contains("total")) {
        Rat total = rat_field(j.at("total"));
        if (total != mu.total())
            throw InvariantError("\"total\" (" + total.str() + ") does not match the root mass (" +
                                 mu.total().str() + ")");
    }
    if (enforce_additive)
        if (auto w = mu.additivity_violation())
            throw InvariantError("measure not additive at \"" + w->bits() + "\"");
    return mu;
}

Json measure_to_json(const DyadicMeasure& mu) {
    Json j;
    j["depth"] = mu.depth;
    j["total"] = mu.total().str();
    j["mass"] = map_to_entries(mu.mass);
    return j;
}

CellMeasure parse_cell_measure(const Json& j) {
    if (!j.is_object() || !j.contains("kind") || j.at("kind").get<std::string>() != "cell-measure")
        throw ParseError("cell measure file needs kind \"cell-measure\"");
    std::vector<Rat> ds = ratio_list(j.at("ratios"));
    std::string bits = j.at("p").get<std::string>();
    std::vector<int> p;
    for (char c : bits) {
        if (c != '0' && c != '1')
            throw ParseError("\"p\" must be a bit string");
        p.push_back(c == '1' ? 1 : 0);
    }
    long depth = j.at("depth").get<long>();
    return shmerkin_measure(p, CantorScheme::from_ratios(ds), depth);
}

Json cell_measure_to_json(const CellMeasure& cm, const std::vector<Rat>& ratios,
                          const std::vector<int>& p_bits) {
    Json j;
    j["kind"] = "cell-measure";
    Json ds = Json::array();
    for (const Rat& d : ratios)
        ds.push_back(d.str());
    j["ratios"] = std::move(ds);
    std::string bits;
    for (int b : p_bits)
        bits += b ? '1' : '0';
    j["p"] = bits;
    j["depth"] = cm.depth();
    return j;
}

Json read_json_file(const std::filesystem::path& p) {
    std::ifstream in(p);
    if (!in)
        throw ParseError("cannot open file: " + p.string());
    Json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError("malformed JSON in " + p.string() + ": " + e.what());
    }
    return j;
}

void write_json_file(const std::filesystem::path& p, const Json& j) {
    std::ofstream out(p);
    if (!out)
        throw Error("cannot write file: " + p.string());
    out << j.dump(2) << "\n";
}

} // namespace frost
