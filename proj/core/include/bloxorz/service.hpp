#pragma once

#include <chrono>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <string>

#include "bloxorz/engine.hpp"

namespace blox::service {

// Every call answers with an HTTP status and a JSON body; the HTTP layer is a
// thin adapter so the store is testable without sockets.
struct Response {
    int status = 200;
    std::string body;
};

struct StoreOptions {
    std::chrono::seconds ttl{3600};
    uint64_t hint_budget = 1'000'000;
    std::function<std::chrono::steady_clock::time_point()> clock = std::chrono::steady_clock::now;
};

class SessionStore {
public:
    explicit SessionStore(std::map<std::string, Level> levels, StoreOptions opt = {});
    ~SessionStore();

    Response list_levels() const;
    Response get_level(const std::string& id) const;
    Response create(const std::string& request_body);  // {"level": id}
    Response get(const std::string& sid);
    Response move(const std::string& sid, const std::string& request_body);  // {"direction": "..."}
    Response undo(const std::string& sid);
    Response reset(const std::string& sid);
    Response hint(const std::string& sid);

    size_t session_count() const;
    void evict_expired();

private:
    struct Session;
    std::shared_ptr<Session> find(const std::string& sid);

    struct LevelEntry;
    std::map<std::string, std::shared_ptr<const LevelEntry>> levels_;
    StoreOptions opt_;
    mutable std::mutex mu_;
    std::map<std::string, std::shared_ptr<Session>> sessions_;
    uint64_t counter_ = 0;
};

// Reads every *.level file in dir; the id is the file stem.
std::map<std::string, Level> load_levels(const std::string& dir);

class HttpServer {
public:
    explicit HttpServer(SessionStore& store);
    ~HttpServer();
    // port 0 picks a free port; returns the bound port or -1
    int bind(const std::string& host, int port);
    void listen();  // blocks until stop()
    void stop();

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

}  // namespace blox::service
