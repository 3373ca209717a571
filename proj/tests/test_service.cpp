#include <gtest/gtest.h>
#include <httplib.h>

#include <atomic>
#include <json.hpp>
#include <set>
#include <thread>

#include "bloxorz/reduction.hpp"
#include "bloxorz/service.hpp"
#include "helpers.hpp"

using namespace blox;
using namespace blox::service;
using nlohmann::json;

namespace {

// manual clock so TTL tests do not sleep
struct FakeClock {
    std::shared_ptr<std::chrono::steady_clock::time_point> now =
        std::make_shared<std::chrono::steady_clock::time_point>();
    std::function<std::chrono::steady_clock::time_point()> fn() const {
        auto p = now;
        return [p] { return *p; };
    }
    void advance(std::chrono::seconds s) const { *now += s; }
};

std::map<std::string, Level> levels() {
    Level fragile = th::strip(5, 4);
    fragile.tiles[{2, 0}] = Tile{TileType::Fragile, 0};
    return {{"strip", th::strip(4, 3)},
            {"dead", th::strip(3, 2)},
            {"quad", gen_quadratic(3)},
            {"fragile", fragile}};
}

json body(const Response& r) { return json::parse(r.body); }

std::string open(SessionStore& st, const std::string& level) {
    Response r = st.create(json{{"level", level}}.dump());
    EXPECT_EQ(r.status, 201) << r.body;
    return body(r)["session"];
}

Response go(SessionStore& st, const std::string& sid, const std::string& d) {
    return st.move(sid, json{{"direction", d}}.dump());
}

void expect_error(const Response& r, int status, const std::string& code) {
    EXPECT_EQ(r.status, status) << r.body;
    json j = body(r);
    EXPECT_EQ(j["code"], code);
    EXPECT_TRUE(j["message"].is_string());
    EXPECT_TRUE(j["details"].is_object());
}

}  // namespace

TEST(Service, Levels) {
    SessionStore st(levels());
    json l = body(st.list_levels());
    EXPECT_EQ(l["levels"].size(), 4u);
    Response one = st.get_level("strip");
    EXPECT_EQ(one.status, 200);
    EXPECT_EQ(body(one)["tiles"].size(), 4u);
    expect_error(st.get_level("nope"), 404, "UnknownLevel");
}

TEST(Service, CreateSession) {
    SessionStore st(levels());
    Response r = st.create(R"({"level": "strip"})");
    ASSERT_EQ(r.status, 201);
    json j = body(r);
    EXPECT_EQ(j["pose"]["kind"], "standing");
    EXPECT_EQ(j["pose"]["x"], 0);
    EXPECT_EQ(j["status"], "in-progress");
    EXPECT_EQ(j["moves"], 0);
    expect_error(st.create(R"({"level": "nope"})"), 404, "UnknownLevel");
    expect_error(st.create("garbage"), 400, "BadRequest");
    expect_error(st.get("nope"), 404, "UnknownSession");
    std::set<std::string> ids;
    for (int i = 0; i < 50; ++i) ids.insert(open(st, "strip"));
    EXPECT_EQ(ids.size(), 50u);
}

TEST(Service, MovesUndoReset) {
    SessionStore st(levels());
    std::string sid = open(st, "strip");
    json a = body(go(st, sid, "right"));
    EXPECT_EQ(a["pose"]["kind"], "lying-x");
    EXPECT_EQ(a["pose"]["x"], 1);
    EXPECT_EQ(a["pose"]["cells"].size(), 2u);
    EXPECT_EQ(a["moves"], 1);

    Response off = go(st, sid, "up");
    expect_error(off, 409, "IllegalMove");
    EXPECT_EQ(body(off)["details"]["kind"], "unsupported");
    EXPECT_FALSE(body(off)["details"]["cells"].empty());
    EXPECT_EQ(body(st.get(sid))["moves"], 1) << "illegal move leaves state alone";

    expect_error(go(st, sid, "sideways"), 400, "BadDirection");
    expect_error(st.move(sid, "{}"), 400, "BadDirection");

    json u = body(st.undo(sid));
    EXPECT_EQ(u["pose"]["kind"], "standing");
    expect_error(st.undo(sid), 409, "EmptyHistory");

    go(st, sid, "right");
    json won = body(go(st, sid, "right"));
    EXPECT_EQ(won["status"], "won");
    expect_error(go(st, sid, "left"), 409, "GameOver");
    EXPECT_EQ(body(st.hint(sid))["verdict"], "solved");

    json r = body(st.reset(sid));
    EXPECT_EQ(r["moves"], 0);
    EXPECT_EQ(r["status"], "in-progress");
}

TEST(Service, SwitchesAndFragileInState) {
    SessionStore st(levels());
    std::string q = open(st, "quad");
    json j = body(st.get(q));
    EXPECT_EQ(j["trapdoors"].size(), 3u);
    // cube level; for r=3 s1 is the start's left neighbour
    json k = body(go(st, q, "left"));
    EXPECT_EQ(k["fired"], json::array({1}));
    std::string f = open(st, "fragile");
    go(st, f, "right");  // lying over 1,2
    json g = body(go(st, f, "right"));  // standing on 3
    EXPECT_EQ(g["consumed"].size(), 1u);
    EXPECT_EQ(g["consumed"][0]["x"], 2);
    Response back = go(st, f, "left");
    expect_error(back, 409, "IllegalMove");
    EXPECT_EQ(body(back)["details"]["kind"], "consumedtile");
}

TEST(Service, Hints) {
    SessionStore st(levels());
    std::string sid = open(st, "strip");
    json h = body(st.hint(sid));
    EXPECT_EQ(h["verdict"], "solvable");
    EXPECT_EQ(h["direction"], "Right");
    EXPECT_EQ(h["remaining"], 2);
    json d = body(st.hint(open(st, "dead")));
    EXPECT_EQ(d["verdict"], "unsolvable");

    StoreOptions small;
    small.hint_budget = 3;
    SessionStore tight(levels(), small);
    Response over = tight.hint(open(tight, "quad"));
    expect_error(over, 503, "BudgetExceeded");
    EXPECT_EQ(body(over)["details"]["budget"], 3);
}

TEST(Service, TtlEviction) {
    FakeClock clock;
    StoreOptions o;
    o.clock = clock.fn();
    SessionStore st(levels(), o);
    std::string a = open(st, "strip"), b = open(st, "strip");
    clock.advance(std::chrono::minutes(59));
    EXPECT_EQ(st.get(a).status, 200);  // touching refreshes a
    clock.advance(std::chrono::minutes(2));
    EXPECT_EQ(st.get(a).status, 200);
    expect_error(st.get(b), 404, "UnknownSession");
    clock.advance(std::chrono::hours(2));
    st.evict_expired();
    EXPECT_EQ(st.session_count(), 0u);
}

TEST(Service, SessionsAreIsolated) {
    SessionStore st(levels());
    std::string a = open(st, "strip"), b = open(st, "strip");
    go(st, a, "right");
    EXPECT_EQ(body(st.get(b))["pose"]["kind"], "standing");
    EXPECT_EQ(body(st.get(a))["pose"]["kind"], "lying-x");
}

TEST(Service, ConcurrentClients) {
    SessionStore st(levels());
    std::string shared = open(st, "strip");
    std::atomic<int> bad{0};
    std::vector<std::thread> ts;
    for (int t = 0; t < 4; ++t)
        ts.emplace_back([&] {
            for (int i = 0; i < 100; ++i) {
                std::string own = json::parse(st.create(R"({"level": "strip"})").body)["session"];
                if (st.move(own, R"({"direction": "right"})").status != 200) ++bad;
                // the shared session only ever flips between two poses
                int s = st.move(shared, R"({"direction": "right"})").status;
                if (s != 200 && s != 409) ++bad;
                st.undo(shared);
            }
        });
    for (auto& t : ts) t.join();
    EXPECT_EQ(bad.load(), 0);
    EXPECT_EQ(st.session_count(), 401u);
}

TEST(Service, HttpRoundTrip) {
    SessionStore st(levels());
    HttpServer srv(st);
    int port = srv.bind("127.0.0.1", 0);
    ASSERT_GT(port, 0);
    std::thread th([&] { srv.listen(); });
    httplib::Client c("127.0.0.1", port);
    auto lv = c.Get("/levels");
    ASSERT_TRUE(lv);
    EXPECT_EQ(lv->status, 200);
    auto cr = c.Post("/sessions", R"({"level": "strip"})", "application/json");
    ASSERT_TRUE(cr);
    EXPECT_EQ(cr->status, 201);
    std::string sid = json::parse(cr->body)["session"];
    auto mv = c.Post("/sessions/" + sid + "/moves", R"({"direction": "right"})", "application/json");
    ASSERT_TRUE(mv);
    EXPECT_EQ(mv->status, 200);
    auto h = c.Get("/sessions/" + sid + "/hint");
    ASSERT_TRUE(h);
    EXPECT_EQ(json::parse(h->body)["direction"], "Right");
    auto miss = c.Get("/sessions/nope");
    ASSERT_TRUE(miss);
    EXPECT_EQ(miss->status, 404);
    EXPECT_EQ(json::parse(miss->body)["code"], "UnknownSession");
    EXPECT_NE(miss->get_header_value("Content-Type").find("json"), std::string::npos);
    srv.stop();
    th.join();
}
