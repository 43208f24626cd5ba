#pragma once

#include <map>
#include <string>

#include "formcap/engine.hpp"
#include "formcap/error.hpp"

namespace httplib {
class Server;
}

namespace formcap {

struct Request {
    std::string method;
    std::string path;
    std::map<std::string, std::string> query;
    std::string body;
};

struct Response {
    int status = 200;
    std::string body;  // always a JSON document
};

int http_status(ErrorCode code);

// JSON API over a CaptureEngine. handle() is transport-free so request
// logs can be replayed without sockets.
class Service {
public:
    explicit Service(CaptureEngine& engine) : engine_(engine) {}

    Response handle(const Request& request) const;

    // Routes every path on `server` through handle().
    void mount(httplib::Server& server) const;

private:
    Response dispatch(const Request& request) const;

    CaptureEngine& engine_;
};

}  // namespace formcap
