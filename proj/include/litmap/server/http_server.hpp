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

#pragma once

#include <cstddef>
#include <memory>
#include <mutex>
#include <string>
#include <thread>

#include "litmap/server/snapshot.hpp"

namespace httplib {
class Server;
}

namespace litmap::server {

struct ServerOptions {
    std::string host = "127.0.0.1";
    /// 0 picks a free port.
    int port = 8080;
    std::size_t threads = 32;
    std::string cors_origin = "*";
};

class ServerError : public Error {
   public:
    using Error::Error;
};

/// Binds the REST handlers to HTTP. Requests take the current snapshot
/// under a short lock and then run without one, so a reload never blocks
/// or disturbs requests in flight.
class ApiServer {
   public:
    ApiServer(std::shared_ptr<const Snapshot> snapshot, ServerOptions options);
    ~ApiServer();
    ApiServer(const ApiServer&) = delete;
    ApiServer& operator=(const ApiServer&) = delete;

    /// Binds the socket; returns the bound port. Throws ServerError.
    int bind();
    /// Serves until stop(); binds first if needed.
    void run();
    /// run() on a background thread; returns once the socket is bound.
    int start();
    void stop();

    void replace_snapshot(std::shared_ptr<const Snapshot> snapshot);
    std::shared_ptr<const Snapshot> snapshot() const;

   private:
    ServerOptions options_;
    mutable std::mutex mutex_;
    std::shared_ptr<const Snapshot> snapshot_;
    std::unique_ptr<httplib::Server> http_;
    int port_ = -1;
    std::thread thread_;
};

}  // namespace litmap::server
