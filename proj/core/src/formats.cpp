#include "bloxorz/formats.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

namespace blox {

using json = nlohmann::ordered_json;

namespace {

int line_of(const std::string& text, size_t byte) {
    return 1 + static_cast<int>(std::count(text.begin(), text.begin() + std::min(byte, text.size()), '\n'));
}

json parse_json(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(e.what(), line_of(text, e.byte));
    }
}

void only_fields(const json& j, std::initializer_list<const char*> allowed, const std::string& where) {
    if (!j.is_object()) throw ParseError("expected an object", 0, where);
    for (auto it = j.begin(); it != j.end(); ++it) {
        bool ok = false;
        for (const char* a : allowed) ok = ok || it.key() == a;
        if (!ok) throw ParseError("unknown field '" + it.key() + "'", 0, where);
    }
}

const json& need(const json& j, const char* key, const std::string& where) {
    auto it = j.find(key);
    if (it == j.end()) throw ParseError("missing field '" + std::string(key) + "'", 0, where);
    return *it;
}

int need_int(const json& j, const char* key, const std::string& where) {
    const json& v = need(j, key, where);
    if (!v.is_number_integer()) throw ParseError("expected an integer", 0, where + "." + key);
    return v.get<int>();
}

std::string need_str(const json& j, const char* key, const std::string& where) {
    const json& v = need(j, key, where);
    if (!v.is_string()) throw ParseError("expected a string", 0, where + "." + key);
    return v.get<std::string>();
}

Cell need_cell(const json& j, const char* key, const std::string& where) {
    const json& v = need(j, key, where);
    std::string w = where + "." + key;
    only_fields(v, {"x", "y"}, w);
    return {need_int(v, "x", w), need_int(v, "y", w)};
}

void check_version(const json& j) {
    if (need_int(j, "version", "document") != kFormatVersion)
        throw ParseError("unsupported version", 0, "version");
}

std::string cell_json(Cell c) {
    return "{\"x\": " + std::to_string(c.x) + ", \"y\": " + std::to_string(c.y) + "}";
}

}  // namespace

Level parse_level(const std::string& text) {
    json j = parse_json(text);
    only_fields(j, {"version", "variant", "switch_order", "start", "goal", "tiles"}, "document");
    check_version(j);
    Level L;
    std::string v = need_str(j, "variant", "document");
    if (v == "block") L.variant = Variant::Block112;
    else if (v == "cube") L.variant = Variant::Cube111;
    else throw ParseError("expected \"block\" or \"cube\"", 0, "variant");
    std::string o = need_str(j, "switch_order", "document");
    if (o == "before") L.switch_order = SwitchOrder::BeforeLegality;
    else if (o == "after") L.switch_order = SwitchOrder::AfterLegality;
    else throw ParseError("expected \"before\" or \"after\"", 0, "switch_order");
    L.start = need_cell(j, "start", "document");
    L.goal = need_cell(j, "goal", "document");
    const json& tiles = need(j, "tiles", "document");
    if (!tiles.is_array()) throw ParseError("expected an array", 0, "tiles");
    for (size_t i = 0; i < tiles.size(); ++i) {
        const json& t = tiles[i];
        std::string w = "tiles[" + std::to_string(i) + "]";
        only_fields(t, {"x", "y", "kind", "id", "target", "initial"}, w);
        Cell c{need_int(t, "x", w), need_int(t, "y", w)};
        std::string kind = need_str(t, "kind", w);
        Tile tile;
        auto forbid = [&](std::initializer_list<const char*> keys) {
            for (const char* k : keys)
                if (t.contains(k)) throw ParseError("field '" + std::string(k) + "' not allowed for " + kind, 0, w);
        };
        if (kind == "normal") {
            forbid({"id", "target", "initial"});
        } else if (kind == "fragile") {
            tile.type = TileType::Fragile;
            forbid({"id", "target", "initial"});
        } else if (kind == "goal") {
            tile.type = TileType::Goal;
            forbid({"id", "target", "initial"});
        } else if (kind == "switch") {
            tile.type = TileType::Switch;
            forbid({"id", "initial"});
            tile.id = need_int(t, "target", w);
        } else if (kind == "trapdoor") {
            tile.type = TileType::Trapdoor;
            forbid({"target"});
            tile.id = need_int(t, "id", w);
            std::string init = need_str(t, "initial", w);
            if (init != "open" && init != "closed") throw ParseError("expected \"open\" or \"closed\"", 0, w + ".initial");
            if (L.trapdoor_open.count(tile.id)) throw ParseError("duplicate trapdoor id", 0, w + ".id");
            L.trapdoor_open[tile.id] = init == "open";
        } else {
            throw ParseError("unknown kind '" + kind + "'", 0, w + ".kind");
        }
        if (!L.tiles.emplace(c, tile).second) throw ParseError("duplicate cell", 0, w);
    }
    return L;
}

std::string serialize_level(const Level& L) {
    std::ostringstream o;
    o << "{\n  \"version\": " << kFormatVersion << ",\n";
    o << "  \"variant\": \"" << (L.variant == Variant::Block112 ? "block" : "cube") << "\",\n";
    o << "  \"switch_order\": \"" << (L.switch_order == SwitchOrder::BeforeLegality ? "before" : "after") << "\",\n";
    o << "  \"start\": " << cell_json(L.start) << ",\n";
    o << "  \"goal\": " << cell_json(L.goal) << ",\n";
    o << "  \"tiles\": [";
    bool first = true;
    for (auto& [c, t] : L.tiles) {  // map is ordered by (y, x)
        o << (first ? "\n" : ",\n") << "    {\"x\": " << c.x << ", \"y\": " << c.y << ", \"kind\": ";
        first = false;
        switch (t.type) {
            case TileType::Normal: o << "\"normal\"}"; break;
            case TileType::Fragile: o << "\"fragile\"}"; break;
            case TileType::Goal: o << "\"goal\"}"; break;
            case TileType::Switch: o << "\"switch\", \"target\": " << t.id << "}"; break;
            case TileType::Trapdoor: {
                auto it = L.trapdoor_open.find(t.id);
                bool open = it != L.trapdoor_open.end() && it->second;
                o << "\"trapdoor\", \"id\": " << t.id << ", \"initial\": \"" << (open ? "open" : "closed") << "\"}";
                break;
            }
        }
    }
    o << (first ? "]\n}\n" : "\n  ]\n}\n");
    return o.str();
}

GraphDocument parse_graph(const std::string& text) {
    json j = parse_json(text);
    only_fields(j, {"version", "vertices", "edges", "initial", "target"}, "document");
    check_version(j);
    GraphDocument d;
    auto& g = d.graph;
    const json& vs = need(j, "vertices", "document");
    if (!vs.is_array()) throw ParseError("expected an array", 0, "vertices");
    for (size_t i = 0; i < vs.size(); ++i) {
        std::string w = "vertices[" + std::to_string(i) + "]";
        only_fields(vs[i], {"id", "kind"}, w);
        std::string id = need_str(vs[i], "id", w), kind = need_str(vs[i], "kind", w);
        if (g.vertex_index(id) >= 0) throw ParseError("duplicate vertex id '" + id + "'", 0, w);
        if (kind != "and" && kind != "or") throw ParseError("expected \"and\" or \"or\"", 0, w + ".kind");
        g.vertices.push_back({id, kind == "and" ? ncl::VertexKind::And : ncl::VertexKind::Or});
    }
    const json& es = need(j, "edges", "document");
    if (!es.is_array()) throw ParseError("expected an array", 0, "edges");
    for (size_t i = 0; i < es.size(); ++i) {
        std::string w = "edges[" + std::to_string(i) + "]";
        only_fields(es[i], {"id", "u", "v", "weight"}, w);
        std::string id = need_str(es[i], "id", w);
        if (g.edge_index(id) >= 0) throw ParseError("duplicate edge id '" + id + "'", 0, w);
        int u = g.vertex_index(need_str(es[i], "u", w));
        int v = g.vertex_index(need_str(es[i], "v", w));
        if (u < 0 || v < 0) throw ParseError("unknown endpoint", 0, w);
        g.edges.push_back({id, u, v, need_int(es[i], "weight", w)});
    }
    const json& init = need(j, "initial", "document");
    if (!init.is_array()) throw ParseError("expected an array", 0, "initial");
    std::vector<int> seen(g.edges.size(), 0);
    d.initial.assign(g.edges.size(), false);
    for (size_t i = 0; i < init.size(); ++i) {
        std::string w = "initial[" + std::to_string(i) + "]";
        only_fields(init[i], {"edge", "towards"}, w);
        int e = g.edge_index(need_str(init[i], "edge", w));
        if (e < 0) throw ParseError("unknown edge", 0, w + ".edge");
        if (seen[e]++) throw ParseError("edge oriented twice", 0, w);
        int t = g.vertex_index(need_str(init[i], "towards", w));
        if (t != g.edges[e].u && t != g.edges[e].v)
            throw ParseError("'towards' is not an endpoint of the edge", 0, w + ".towards");
        d.initial[e] = t == g.edges[e].v;
    }
    for (size_t e = 0; e < g.edges.size(); ++e)
        if (!seen[e]) throw ParseError("missing orientation for edge '" + g.edges[e].name + "'", 0, "initial");
    g.target = g.edge_index(need_str(j, "target", "document"));
    if (g.target < 0) throw ParseError("unknown edge", 0, "target");
    return d;
}

std::string serialize_graph(const ncl::Graph& g, const ncl::Configuration& c) {
    json j;
    j["version"] = kFormatVersion;
    j["vertices"] = json::array();
    for (auto& v : g.vertices) j["vertices"].push_back({{"id", v.name}, {"kind", v.kind == ncl::VertexKind::And ? "and" : "or"}});
    j["edges"] = json::array();
    for (auto& e : g.edges)
        j["edges"].push_back({{"id", e.name}, {"u", g.vertices[e.u].name}, {"v", g.vertices[e.v].name}, {"weight", e.weight}});
    j["initial"] = json::array();
    for (size_t e = 0; e < g.edges.size(); ++e)
        j["initial"].push_back({{"edge", g.edges[e].name}, {"towards", g.vertices[ncl::head(g, c, static_cast<int>(e))].name}});
    j["target"] = g.edges[g.target].name;
    return j.dump(2) + "\n";
}

CnfFormula parse_dimacs(const std::string& text) {
    CnfFormula f;
    std::istringstream in(text);
    std::string line;
    int lineno = 0, declared = -1;
    std::vector<int> cur;
    int cur_line = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::istringstream ls(line);
        std::string first;
        if (!(ls >> first)) continue;
        if (first == "c" || first[0] == 'c') continue;
        if (first == "%") break;  // SATLIB trailer
        if (first == "p") {
            std::string fmt;
            if (declared >= 0) throw ParseError("second header", lineno);
            if (!(ls >> fmt >> f.variables >> declared) || fmt != "cnf" || f.variables < 0 || declared < 0)
                throw ParseError("malformed header, expected 'p cnf <vars> <clauses>'", lineno);
            continue;
        }
        if (declared < 0) throw ParseError("clause before header", lineno);
        std::istringstream cs(line);
        std::string tok;
        while (cs >> tok) {
            int lit = 0;
            try {
                size_t used = 0;
                lit = std::stoi(tok, &used);
                if (used != tok.size()) throw std::invalid_argument(tok);
            } catch (const std::exception&) {
                throw ParseError("bad literal '" + tok + "'", lineno);
            }
            if (lit == 0) {
                if (cur.empty()) throw ParseError("empty clause", lineno);
                if (cur.size() > 3) throw ParseError("clause has more than 3 literals", cur_line);
                f.clauses.push_back(cur);
                cur.clear();
                continue;
            }
            if (std::abs(lit) > f.variables) throw ParseError("literal exceeds variable count", lineno);
            if (cur.empty()) cur_line = lineno;
            cur.push_back(lit);
        }
    }
    if (declared < 0) throw ParseError("missing 'p cnf' header");
    if (!cur.empty()) throw ParseError("unterminated clause", cur_line);
    if (static_cast<int>(f.clauses.size()) != declared)
        throw ParseError("header declares " + std::to_string(declared) + " clauses, found " +
                         std::to_string(f.clauses.size()));
    return f;
}

std::string serialize_dimacs(const CnfFormula& f) {
    std::ostringstream o;
    o << "p cnf " << f.variables << " " << f.clauses.size() << "\n";
    for (auto& c : f.clauses) {
        for (int l : c) o << l << " ";
        o << "0\n";
    }
    return o.str();
}

std::string render_ascii(const Level& L, const std::optional<GameState>& state) {
    if (L.tiles.empty()) return "(empty level)\n";
    int minx = L.tiles.begin()->first.x, maxx = minx;
    int miny = L.tiles.begin()->first.y, maxy = L.tiles.rbegin()->first.y;
    for (auto& [c, t] : L.tiles) {
        minx = std::min(minx, c.x);
        maxx = std::max(maxx, c.x);
    }
    Board board(L);
    GameState s = state ? *state : board.initial_state();
    std::set<Cell> block;
    if (state)
        for (Cell c : occupied_cells(s.pose)) block.insert(c);

    std::ostringstream o;
    for (int y = miny; y <= maxy; ++y) {
        std::string row;
        for (int x = minx; x <= maxx; ++x) {
            Cell c{x, y};
            if (block.count(c)) {
                row += 'B';
                continue;
            }
            if (!state && c == L.start) {
                row += 'S';
                continue;
            }
            auto it = L.tiles.find(c);
            if (it == L.tiles.end()) {
                row += ' ';
                continue;
            }
            switch (it->second.type) {
                case TileType::Normal: row += '.'; break;
                case TileType::Goal: row += 'G'; break;
                case TileType::Switch: row += 's'; break;
                case TileType::Trapdoor: {
                    int i = board.trapdoor_index(it->second.id);
                    row += (i >= 0 && s.trap_open.get(i)) ? 'd' : 'D';
                    break;
                }
                case TileType::Fragile: {
                    auto& fc = board.fragile_cells();
                    size_t i = std::lower_bound(fc.begin(), fc.end(), c, RowMajor{}) - fc.begin();
                    row += s.consumed.get(i) ? "␣" : "!";
                    break;
                }
            }
        }
        while (!row.empty() && row.back() == ' ') row.pop_back();
        o << row << "\n";
    }
    o << "origin (" << minx << "," << miny << ")";
    if (state) o << ", block " << pose_string(s.pose);
    o << "\n";
    std::map<int, Cell> trap_at;
    for (auto& [c, t] : L.tiles)
        if (t.type == TileType::Trapdoor) trap_at[t.id] = c;
    for (auto& [c, t] : L.tiles) {
        if (t.type != TileType::Switch) continue;
        o << "s(" << c.x << "," << c.y << ") -> T" << t.id;
        auto it = trap_at.find(t.id);
        if (it != trap_at.end()) {
            int i = board.trapdoor_index(t.id);
            o << " at (" << it->second.x << "," << it->second.y << ") " << (s.trap_open.get(i) ? "open" : "closed");
        } else {
            o << " (missing)";
        }
        o << "\n";
    }
    return o.str();
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << text;
    if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace blox
