#include "rbc/jsonio.hpp"

namespace rbc {

json cyc_to_json(const Cyc& c) {
    json terms = json::array();
    for (auto& [k, r] : c.terms()) terms.push_back({k, r.num(), r.den()});
    return json{{"N", c.conductor()}, {"terms", terms}};
}

json table_to_json(const CharTable& t) {
    const Group& g = *t.G;
    json classes = json::array();
    for (const auto& c : g.classes())
        classes.push_back({{"rep", mat_str(g.elem(c.rep).m)},
                           {"size", c.size},
                           {"centralizer", c.centralizer}});
    json irr = json::array();
    for (const auto& chi : t.irr) {
        json vals = json::array();
        for (const auto& v : chi.vals) vals.push_back(cyc_to_json(v));
        irr.push_back({{"degree", chi.degree_int()}, {"values", vals}});
    }
    return json{{"schema", 1},
                {"group", g.name},
                {"q", g.q},
                {"order", g.order()},
                {"classes", classes},
                {"irreducibles", irr}};
}

json finite_torus_to_json(const FiniteTorusReport& r) {
    json items = json::array();
    for (const auto& it : r.items)
        items.push_back({{"part", it.part},
                         {"holds", it.holds},
                         {"expected_exception", it.expected_exception},
                         {"witness", it.witness}});
    return json{{"schema", 1},
                {"check", "finite-torus"},
                {"q", r.q},
                {"items", items},
                {"verdict", r.pass ? "PASS" : "FAIL"}};
}

json shintani_to_json(const ShintaniResult& r, const std::string& label) {
    json rows = json::array();
    for (const auto& row : r.ledger)
        rows.push_back({{"tclass", row.tclass},
                        {"regular", row.regular},
                        {"twisted", cyc_to_json(row.twisted)},
                        {"ordinary", cyc_to_json(row.ordinary)}});
    return json{{"schema", 1},
                {"check", "shintani"},
                {"inputs", label},
                {"ledger", rows},
                {"sign", r.sign},
                {"verdict", r.consistent ? "PASS" : "FAIL"},
                {"failure", r.failure}};
}

json jl_to_json(const JlResult& r) {
    json as = json::array();
    for (auto& [a, b] : r.assignment) as.push_back({{"from", a}, {"to", b}});
    return json{{"schema", 1},
                {"check", "jl-uniqueness"},
                {"q", r.q},
                {"assignment", as},
                {"identity", r.identity_holds},
                {"unique", r.unique},
                {"detail", r.detail},
                {"verdict", (r.identity_holds && r.unique) ? "PASS" : "FAIL"}};
}

json catalog_to_json(const std::vector<Packet>& packets, const PacketOptions& opt,
                     bool with_ktype) {
    json arr = json::array();
    for (const auto& p : packets) {
        json members = json::array();
        for (const auto& m : p.members) members.push_back(m.str());
        json entry{{"packet_id", p.id},
                   {"kind", std::string(1, p.kind)},
                   {"group", p.group},
                   {"members", members},
                   {"origin", p.origin}};
        if (p.group == "U21") {
            TransferImage img = base_change(p, opt);
            entry["base_change"] = {{"clause", img.clause}, {"description", img.description}};
        }
        if (with_ktype && p.group == "U21") {
            KtypeReport kr = ktype_compat_check(p, opt);
            entry["ktype_check"] = kr.pass ? "PASS" : "FAIL";
            entry["ktype_ledger"] = kr.ledger;
        }
        arr.push_back(entry);
    }
    return json{
        {"schema", 1}, {"q", opt.q}, {"omega", opt.omega_sign > 0 ? "plus" : "minus"},
        {"packets", arr}};
}

std::string counts_to_csv(const PacketCounts& c, int q) {
    std::string s = "q,case1_constituents,case2_pi2,case2_pin,case3_pi1,case3_pi2,sc3,"
                    "sc_size2,u11_sc_size2,u2_size2\n";
    s += std::to_string(q) + "," + std::to_string(c.case1_constituents) + "," +
         std::to_string(c.case2_pi2) + "," + std::to_string(c.case2_pin) + "," +
         std::to_string(c.case3_pi1) + "," + std::to_string(c.case3_pi2) + "," +
         std::to_string(c.sc3_classes) + "," + std::to_string(c.sc_size2_packets) + "," +
         std::to_string(c.u11_sc_size2) + "," + std::to_string(c.u2_size2) + "\n";
    return s;
}

std::string hash_hex(const std::string& bytes) {
    uint64_t h = 1469598103934665603ull;
    for (unsigned char b : bytes) {
        h ^= b;
        h *= 1099511628211ull;
    }
    char buf[17];
    snprintf(buf, sizeof buf, "%016llx", (unsigned long long)h);
    return std::string(buf);
}

} // namespace rbc
