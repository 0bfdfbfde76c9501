// Copyright 2026 The litmap Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "litmap/server/http_server.hpp"

#include <httplib.h>

#include "litmap/core/log.hpp"
#include "litmap/server/handlers.hpp"

namespace litmap::server {

ApiServer::ApiServer(std::shared_ptr<const Snapshot> snapshot, ServerOptions options)
    : options_(std::move(options)), snapshot_(std::move(snapshot)), http_(std::make_unique<httplib::Server>()) {
    if (!snapshot_) {
        throw ServerError("server needs a snapshot");
    }
    const std::size_t threads = std::max<std::size_t>(options_.threads, 1);
    http_->new_task_queue = [threads] { return new httplib::ThreadPool(threads); };
    http_->set_socket_options([](socket_t sock) {
        int yes = 1;
        setsockopt(sock, SOL_SOCKET, SO_REUSEADDR, &yes, sizeof(yes));
    });
    http_->set_default_headers({{"Access-Control-Allow-Origin", options_.cors_origin},
                                {"Access-Control-Allow-Methods", "GET, POST, OPTIONS"},
                                {"Access-Control-Allow-Headers", "Content-Type"}});

    auto dispatch = [this](const httplib::Request& req, httplib::Response& res) {
        Request request;
        request.method = req.method;
        request.path = req.path;
        for (const auto& [key, value] : req.params) {
            request.params.emplace_back(key, value);
        }
        request.body = req.body;
        const Response response = handle(*this->snapshot(), request);
        res.status = response.status;
        res.set_content(response.body, response.content_type);
        log::debug(req.method + " " + req.path + " " + std::to_string(response.status));
    };
    const char* kAny = R"(/.*)";
    http_->Get(kAny, dispatch);
    http_->Post(kAny, dispatch);
    http_->Put(kAny, dispatch);
    http_->Delete(kAny, dispatch);
    http_->Patch(kAny, dispatch);
    http_->Options(kAny, [](const httplib::Request&, httplib::Response& res) { res.status = 204; });
}

ApiServer::~ApiServer() { stop(); }

int ApiServer::bind() {
    if (port_ >= 0) {
        return port_;
    }
    if (options_.port == 0) {
        port_ = http_->bind_to_any_port(options_.host);
    } else if (http_->bind_to_port(options_.host, options_.port)) {
        port_ = options_.port;
    }
    if (port_ < 0) {
        throw ServerError("cannot bind " + options_.host + ":" + std::to_string(options_.port));
    }
    return port_;
}

void ApiServer::run() {
    bind();
    log::info("serving on " + options_.host + ":" + std::to_string(port_));
    if (!http_->listen_after_bind()) {
        throw ServerError("server stopped with an error");
    }
}

int ApiServer::start() {
    const int port = bind();
    thread_ = std::thread([this] { http_->listen_after_bind(); });
    http_->wait_until_ready();
    return port;
}

void ApiServer::stop() {
    http_->stop();
    if (thread_.joinable()) {
        thread_.join();
    }
}

void ApiServer::replace_snapshot(std::shared_ptr<const Snapshot> snapshot) {
    if (!snapshot) {
        throw ServerError("cannot serve a null snapshot");
    }
    std::lock_guard lock(mutex_);
    snapshot_.swap(snapshot);
}

std::shared_ptr<const Snapshot> ApiServer::snapshot() const {
    std::lock_guard lock(mutex_);
    return snapshot_;
}

}  // namespace litmap::server
