#include "impartial/json_io.hpp"

#include <json.hpp>

#include "impartial/errors.hpp"

namespace impartial {

using nlohmann::json;

namespace {

json parse_or_throw(const std::string& text) {
    json parsed = json::parse(text, nullptr, false);
    if (parsed.is_discarded()) throw ValidationError("malformed JSON");
    return parsed;
}

int get_n(const json& parsed) {
    if (!parsed.contains("n") || !parsed["n"].is_number_integer()) {
        throw ValidationError("field 'n' missing or not an integer");
    }
    const int n = parsed["n"].get<int>();
    if (n < 1) throw ValidationError("field 'n' must be positive");
    return n;
}

std::vector<int> int_array(const json& value, const std::string& where) {
    if (!value.is_array()) throw ValidationError(where + ": expected an array");
    std::vector<int> out;
    out.reserve(value.size());
    for (const auto& item : value) {
        if (!item.is_number_integer()) throw ValidationError(where + ": expected integers");
        out.push_back(item.get<int>());
    }
    return out;
}

json permutation_to_array(const Permutation& p) {
    return json(p.one_line());
}

json witness_to_json(const Witness& w) {
    json out;
    out["profile"] = json::parse(profile_to_json(w.profile));
    if (w.deviation) out["deviation"] = permutation_to_array(*w.deviation);
    if (w.agent >= 0) out["agent"] = w.agent;
    if (w.subject >= 0) out["subject"] = w.subject;
    if (w.subject2 >= 0) out["subject2"] = w.subject2;
    out["details"] = w.details;
    return out;
}

}  // namespace

RankingProfile parse_profile_json(const std::string& text) {
    const json parsed = parse_or_throw(text);
    const int n = get_n(parsed);
    if (!parsed.contains("rankings") || !parsed["rankings"].is_array()) {
        throw ValidationError("field 'rankings' missing or not an array");
    }
    const auto& rankings = parsed["rankings"];
    if (static_cast<int>(rankings.size()) != n) {
        throw ValidationError("expected " + std::to_string(n) + " rankings, found " +
                              std::to_string(rankings.size()));
    }
    std::vector<Permutation> perms;
    perms.reserve(rankings.size());
    for (std::size_t i = 0; i < rankings.size(); ++i) {
        const std::string where = "rankings[" + std::to_string(i) + "]";
        std::vector<int> line = int_array(rankings[i], where);
        if (static_cast<int>(line.size()) != n) {
            throw ValidationError(where + ": expected " + std::to_string(n) + " entries");
        }
        try {
            perms.emplace_back(std::move(line));
        } catch (const ValidationError& error) {
            throw ValidationError(where + ": " + error.what());
        }
    }
    return RankingProfile(std::move(perms));
}

std::string profile_to_json(const RankingProfile& profile) {
    json out;
    out["n"] = profile.n();
    json rankings = json::array();
    for (int i = 0; i < profile.n(); ++i) rankings.push_back(permutation_to_array(profile.ranking_of(i)));
    out["rankings"] = rankings;
    return out.dump();
}

std::string multigraph_to_json(const RhoVector& rho, const ColoredMultigraph& graph) {
    json out;
    out["n"] = graph.n();
    out["rho"] = rho.values();
    json edges = json::object();
    for (int color = 0; color < graph.n(); ++color) {
        json list = json::array();
        for (const auto& [j, k] : graph.edges(color)) list.push_back(json::array({j, k}));
        edges[std::to_string(color)] = list;
    }
    out["edges"] = edges;
    return out.dump();
}

std::pair<RhoVector, ColoredMultigraph> parse_multigraph_json(const std::string& text) {
    const json parsed = parse_or_throw(text);
    const int n = get_n(parsed);
    if (!parsed.contains("rho")) throw ValidationError("field 'rho' missing");
    RhoVector rho(int_array(parsed["rho"], "rho"));
    if (rho.n() != n) throw ValidationError("field 'rho' has wrong length");
    ColoredMultigraph graph(n);
    if (!parsed.contains("edges") || !parsed["edges"].is_object()) {
        throw ValidationError("field 'edges' missing or not an object");
    }
    for (const auto& [key, list] : parsed["edges"].items()) {
        int color;
        try {
            color = std::stoi(key);
        } catch (const std::exception&) {
            throw ValidationError("edges: color key '" + key + "' is not an integer");
        }
        if (!list.is_array()) throw ValidationError("edges[" + key + "]: expected an array");
        for (const auto& pair : list) {
            const std::vector<int> e = int_array(pair, "edges[" + key + "]");
            if (e.size() != 2) throw ValidationError("edges[" + key + "]: expected pairs");
            try {
                graph.add_edge(color, e[0], e[1]);
            } catch (const ValidationError& error) {
                throw ValidationError("edges[" + key + "]: " + error.what());
            }
        }
    }
    return {std::move(rho), std::move(graph)};
}

std::string blocking_sets_to_json(const RhoVector& rho, const BlockingSets& sets) {
    json out;
    out["n"] = sets.n();
    out["rho"] = rho.values();
    json by_agent = json::object();
    for (int i = 0; i < sets.n(); ++i) {
        json by_bit = json::object();
        for (int b = 0; b < 2; ++b) {
            json by_target = json::object();
            for (int j = 0; j < sets.n(); ++j) {
                if (i == j) continue;
                by_target[std::to_string(j)] = sets.positions(i, b, j);
            }
            by_bit[std::to_string(b)] = by_target;
        }
        by_agent[std::to_string(i)] = by_bit;
    }
    out["sets"] = by_agent;
    return out.dump();
}

std::string cutting_family_to_json(const CuttingFamily& family) {
    json out;
    out["n"] = family.n();
    json sets = json::object();
    for (int color = 0; color < 3; ++color) {
        json list = json::array();
        for (int l = 0; l < family.size(color); ++l) list.push_back(family.set(color, l));
        sets[std::to_string(color)] = list;
    }
    out["sets"] = sets;
    return out.dump();
}

CuttingFamily parse_cutting_family_json(const std::string& text) {
    const json parsed = parse_or_throw(text);
    const int n = get_n(parsed);
    if (!parsed.contains("sets") || !parsed["sets"].is_object()) {
        throw ValidationError("field 'sets' missing or not an object");
    }
    std::array<std::vector<std::uint64_t>, 3> sets;
    for (int color = 0; color < 3; ++color) {
        const std::string key = std::to_string(color);
        if (!parsed["sets"].contains(key)) throw ValidationError("sets: color '" + key + "' missing");
        const auto& list = parsed["sets"][key];
        if (!list.is_array()) throw ValidationError("sets[" + key + "]: expected an array");
        for (const auto& entry : list) {
            std::uint64_t mask = 0;
            for (int v : int_array(entry, "sets[" + key + "]")) {
                if (v < 0 || v >= n) throw ValidationError("sets[" + key + "]: position out of range");
                mask |= std::uint64_t{1} << v;
            }
            sets[color].push_back(mask);
        }
    }
    return CuttingFamily(n, std::move(sets));
}

std::string axiom_report_to_json(const AxiomReport& report) {
    json out;
    out["axiom"] = report.axiom;
    out["mode"] = to_string(report.mode);
    out["verdict"] = to_string(report.verdict);
    out["cases"] = report.cases;
    if (report.mode == CheckMode::sampled) {
        out["trials"] = report.trials;
        out["seed"] = report.seed;
    }
    if (report.witness) out["witness"] = witness_to_json(*report.witness);
    return out.dump();
}

std::string chain_audit_to_json(const ChainAuditResult& result) {
    json out;
    out["kind"] = result.kind == ChainAuditResult::Kind::unanimity_violation
                      ? "unanimity-violation"
                      : "impartiality-violation";
    out["profile"] = json::parse(profile_to_json(result.profile));
    out["output"] = result.output.one_line();
    if (result.kind == ChainAuditResult::Kind::unanimity_violation) {
        out["pair"] = json::array({result.pair_first, result.pair_second});
    } else {
        out["agent"] = result.agent;
        if (result.previous) out["previous"] = json::parse(profile_to_json(*result.previous));
        if (result.previous_output) out["previous_output"] = result.previous_output->one_line();
    }
    out["details"] = result.details;
    return out.dump();
}

}  // namespace impartial
