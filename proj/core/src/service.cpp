#include "bloxorz/service.hpp"

#include <filesystem>
#include <random>
#include <vector>

#include <httplib.h>
#include <json.hpp>

#include "bloxorz/formats.hpp"
#include "bloxorz/solver.hpp"

namespace blox::service {

using json = nlohmann::ordered_json;

struct SessionStore::LevelEntry {
    std::string id;
    Level level;
    Board board;
    LevelEntry(std::string i, Level l) : id(std::move(i)), level(std::move(l)), board(level) {}
};

struct SessionStore::Session {
    std::mutex mu;  // serializes every request on this session
    std::string id;
    std::shared_ptr<const LevelEntry> level;
    GameState state;
    std::vector<std::pair<Direction, GameState>> history;
    std::chrono::steady_clock::time_point last_used;
};

namespace {

Response error(int status, const std::string& code, const std::string& message, json details = json::object()) {
    json j{{"code", code}, {"message", message}, {"details", std::move(details)}};
    return {status, j.dump()};
}

const char* kind_name(PoseKind k) {
    switch (k) {
        case PoseKind::Standing: return "standing";
        case PoseKind::LyingX: return "lying-x";
        case PoseKind::LyingY: return "lying-y";
    }
    return "?";
}

json cells_json(const std::vector<Cell>& cs) {
    json a = json::array();
    for (Cell c : cs) a.push_back({{"x", c.x}, {"y", c.y}});
    return a;
}

json state_json(const std::string& sid, const std::string& level_id, const Board& b, const GameState& s,
                size_t moves, const std::vector<int>& fired) {
    json traps = json::array();
    for (size_t i = 0; i < b.trapdoor_count(); ++i)
        traps.push_back({{"id", b.trapdoor_id(i)}, {"open", s.trap_open.get(i)}});
    std::vector<Cell> consumed;
    for (size_t i = 0; i < b.fragile_count(); ++i)
        if (s.consumed.get(i)) consumed.push_back(b.fragile_cells()[i]);
    return json{{"session", sid},
                {"level", level_id},
                {"pose",
                 {{"kind", kind_name(s.pose.kind)},
                  {"x", s.pose.anchor.x},
                  {"y", s.pose.anchor.y},
                  {"cells", cells_json(occupied_cells(s.pose))}}},
                {"trapdoors", traps},
                {"consumed", cells_json(consumed)},
                {"status", b.is_goal(s) ? "won" : "in-progress"},
                {"moves", moves},
                {"fired", fired}};
}

json level_json(const Level& lv) {
    json tiles = json::array();
    for (auto& [c, t] : lv.tiles) {
        json e{{"x", c.x}, {"y", c.y}};
        switch (t.type) {
            case TileType::Normal: e["kind"] = "normal"; break;
            case TileType::Fragile: e["kind"] = "fragile"; break;
            case TileType::Goal: e["kind"] = "goal"; break;
            case TileType::Switch:
                e["kind"] = "switch";
                e["target"] = t.id;
                break;
            case TileType::Trapdoor:
                e["kind"] = "trapdoor";
                e["id"] = t.id;
                e["initial"] = lv.trapdoor_open.at(t.id) ? "open" : "closed";
                break;
        }
        tiles.push_back(std::move(e));
    }
    return json{{"variant", lv.variant == Variant::Block112 ? "block" : "cube"},
                {"switch_order", lv.switch_order == SwitchOrder::BeforeLegality ? "before" : "after"},
                {"tiles", tiles},
                {"start", {{"x", lv.start.x}, {"y", lv.start.y}}},
                {"goal", {{"x", lv.goal.x}, {"y", lv.goal.y}}}};
}

std::optional<json> parse_body(const std::string& body) {
    json j = json::parse(body, nullptr, false);
    if (j.is_discarded() || !j.is_object()) return std::nullopt;
    return j;
}

std::string random_hex() {
    static std::mt19937_64 rng{std::random_device{}()};
    static std::mutex mu;
    std::lock_guard lock(mu);
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(rng()));
    return buf;
}

}  // namespace

SessionStore::SessionStore(std::map<std::string, Level> levels, StoreOptions opt) : opt_(std::move(opt)) {
    for (auto& [id, lv] : levels) levels_[id] = std::make_shared<const LevelEntry>(id, std::move(lv));
}

SessionStore::~SessionStore() = default;

Response SessionStore::list_levels() const {
    json a = json::array();
    for (auto& [id, e] : levels_)
        a.push_back({{"id", id},
                     {"variant", e->level.variant == Variant::Block112 ? "block" : "cube"},
                     {"tiles", e->level.tiles.size()}});
    return {200, json{{"levels", a}}.dump()};
}

Response SessionStore::get_level(const std::string& id) const {
    auto it = levels_.find(id);
    if (it == levels_.end()) return error(404, "UnknownLevel", "no level named " + id);
    json j = level_json(it->second->level);
    j["id"] = id;
    j["render"] = render_ascii(it->second->level);
    return {200, j.dump()};
}

Response SessionStore::create(const std::string& body) {
    auto j = parse_body(body);
    if (!j || !j->contains("level") || !(*j)["level"].is_string())
        return error(400, "BadRequest", "body must be {\"level\": <id>}");
    std::string lid = (*j)["level"];
    auto it = levels_.find(lid);
    if (it == levels_.end()) return error(404, "UnknownLevel", "no level named " + lid, {{"level", lid}});
    evict_expired();
    auto s = std::make_shared<Session>();
    s->level = it->second;
    s->state = s->level->board.initial_state();
    s->last_used = opt_.clock();
    {
        std::lock_guard lock(mu_);
        s->id = random_hex() + std::to_string(++counter_);
        sessions_[s->id] = s;
    }
    return {201, state_json(s->id, lid, s->level->board, s->state, 0, {}).dump()};
}

std::shared_ptr<SessionStore::Session> SessionStore::find(const std::string& sid) {
    std::lock_guard lock(mu_);
    auto it = sessions_.find(sid);
    if (it == sessions_.end()) return nullptr;
    if (opt_.clock() - it->second->last_used > opt_.ttl) {
        sessions_.erase(it);
        return nullptr;
    }
    it->second->last_used = opt_.clock();
    return it->second;
}

void SessionStore::evict_expired() {
    std::lock_guard lock(mu_);
    auto now = opt_.clock();
    for (auto it = sessions_.begin(); it != sessions_.end();)
        it = now - it->second->last_used > opt_.ttl ? sessions_.erase(it) : std::next(it);
}

size_t SessionStore::session_count() const {
    std::lock_guard lock(mu_);
    return sessions_.size();
}

#define WITH_SESSION(sid)                                                                   \
    auto s = find(sid);                                                                     \
    if (!s) return error(404, "UnknownSession", "no session " + (sid), {{"session", sid}}); \
    std::lock_guard session_lock(s->mu);                                                    \
    const Board& b = s->level->board

Response SessionStore::get(const std::string& sid) {
    WITH_SESSION(sid);
    return {200, state_json(s->id, s->level->id, b, s->state, s->history.size(), {}).dump()};
}

Response SessionStore::move(const std::string& sid, const std::string& body) {
    WITH_SESSION(sid);
    auto j = parse_body(body);
    std::optional<Direction> d;
    if (j && j->contains("direction") && (*j)["direction"].is_string()) d = parse_direction((*j)["direction"]);
    if (!d) return error(400, "BadDirection", "direction must be one of up, down, left, right");
    if (b.is_goal(s->state)) return error(409, "GameOver", "level already solved");
    MoveOutcome m = b.apply_move(s->state, *d);
    if (!m.ok()) {
        std::string kind = move_error_name(m.error->kind);
        for (auto& c : kind) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
        return error(409, "IllegalMove", std::string(move_error_name(m.error->kind)) + " move " + direction_name(*d),
                     {{"kind", kind}, {"cells", cells_json(m.error->cells)}});
    }
    s->history.emplace_back(*d, s->state);
    s->state = *m.state;
    return {200, state_json(s->id, s->level->id, b, s->state, s->history.size(), m.fired).dump()};
}

Response SessionStore::undo(const std::string& sid) {
    WITH_SESSION(sid);
    if (s->history.empty()) return error(409, "EmptyHistory", "nothing to undo");
    s->state = s->history.back().second;
    s->history.pop_back();
    return {200, state_json(s->id, s->level->id, b, s->state, s->history.size(), {}).dump()};
}

Response SessionStore::reset(const std::string& sid) {
    WITH_SESSION(sid);
    s->history.clear();
    s->state = b.initial_state();
    return {200, state_json(s->id, s->level->id, b, s->state, 0, {}).dump()};
}

Response SessionStore::hint(const std::string& sid) {
    WITH_SESSION(sid);
    if (b.is_goal(s->state)) return {200, json{{"verdict", "solved"}}.dump()};
    BfsOptions opt;
    opt.budget = opt_.hint_budget;
    opt.from = s->state;
    BfsResult r = bfs_solve(s->level->level, opt);
    switch (r.status) {
        case SolveStatus::Solved:
            return {200, json{{"verdict", "solvable"},
                              {"direction", direction_name(r.solution->moves.front())},
                              {"remaining", r.solution->moves.size()}}
                             .dump()};
        case SolveStatus::Unsolvable:
            return {200, json{{"verdict", "unsolvable"}, {"explored", r.explored}}.dump()};
        case SolveStatus::BudgetExceeded: break;
    }
    return error(503, "BudgetExceeded", "search budget exhausted", {{"budget", opt_.hint_budget}});
}

#undef WITH_SESSION

std::map<std::string, Level> load_levels(const std::string& dir) {
    std::map<std::string, Level> out;
    for (auto& ent : std::filesystem::directory_iterator(dir)) {
        if (!ent.is_regular_file() || ent.path().extension() != ".level") continue;
        out[ent.path().stem().string()] = parse_level(read_file(ent.path().string()));
    }
    return out;
}

struct HttpServer::Impl {
    SessionStore& store;
    httplib::Server srv;
    explicit Impl(SessionStore& s) : store(s) {}
};

HttpServer::HttpServer(SessionStore& store) : impl_(std::make_unique<Impl>(store)) {
    auto& srv = impl_->srv;
    auto& st = impl_->store;
    auto send = [](httplib::Response& res, const Response& r) {
        res.status = r.status;
        res.set_content(r.body, "application/json");
    };
    srv.set_default_headers({{"Access-Control-Allow-Origin", "*"}});
    srv.Get("/levels", [&st, send](const httplib::Request&, httplib::Response& res) { send(res, st.list_levels()); });
    srv.Get(R"(/levels/([^/]+))", [&st, send](const httplib::Request& req, httplib::Response& res) {
        send(res, st.get_level(req.matches[1]));
    });
    srv.Post("/sessions", [&st, send](const httplib::Request& req, httplib::Response& res) {
        send(res, st.create(req.body));
    });
    srv.Get(R"(/sessions/([^/]+))", [&st, send](const httplib::Request& req, httplib::Response& res) {
        send(res, st.get(req.matches[1]));
    });
    srv.Post(R"(/sessions/([^/]+)/moves)", [&st, send](const httplib::Request& req, httplib::Response& res) {
        send(res, st.move(req.matches[1], req.body));
    });
    srv.Post(R"(/sessions/([^/]+)/undo)", [&st, send](const httplib::Request& req, httplib::Response& res) {
        send(res, st.undo(req.matches[1]));
    });
    srv.Post(R"(/sessions/([^/]+)/reset)", [&st, send](const httplib::Request& req, httplib::Response& res) {
        send(res, st.reset(req.matches[1]));
    });
    srv.Get(R"(/sessions/([^/]+)/hint)", [&st, send](const httplib::Request& req, httplib::Response& res) {
        send(res, st.hint(req.matches[1]));
    });
}

HttpServer::~HttpServer() = default;

int HttpServer::bind(const std::string& host, int port) {
    if (port == 0) return impl_->srv.bind_to_any_port(host);
    return impl_->srv.bind_to_port(host, port) ? port : -1;
}

void HttpServer::listen() { impl_->srv.listen_after_bind(); }
void HttpServer::stop() { impl_->srv.stop(); }

}  // namespace blox::service
