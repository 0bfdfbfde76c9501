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

// litmap: runs the corpus pipeline stages and the API server.
//
//   litmap --config pipeline.json filter|scrape|clean|embed|project|export
//   litmap --config pipeline.json serve [--host H] [--port P]
//
// Exit status: 0 success, 1 stage failure, 2 bad config or usage,
// 3 missing input.

#include <csignal>
#include <iostream>
#include <thread>

#include <CLI11.hpp>

#include "litmap/core/log.hpp"
#include "litmap/pipeline/config.hpp"
#include "litmap/pipeline/stages.hpp"
#include "litmap/server/handlers.hpp"
#include "litmap/server/http_server.hpp"

namespace {

using litmap::pipeline::Stage;

enum Exit { kOk = 0, kFailed = 1, kConfig = 2, kMissing = 3 };

int serve(const litmap::pipeline::PipelineConfig& config, bool dry_run) {
    auto snapshot = litmap::server::load_snapshot(litmap::pipeline::snapshot_sources(config));
    if (dry_run) {
        const auto health = litmap::server::handle(*snapshot, {"GET", "/api/health", {}, {}});
        std::cout << health.body << '\n';
        return kOk;
    }
    sigset_t signals;
    sigemptyset(&signals);
    sigaddset(&signals, SIGINT);
    sigaddset(&signals, SIGTERM);
    pthread_sigmask(SIG_BLOCK, &signals, nullptr);

    litmap::server::ApiServer server(std::move(snapshot), config.server);
    const int port = server.bind();
    std::cout << "listening on " << config.server.host << ':' << port << std::endl;
    std::jthread waiter([&server, &signals] {
        int received = 0;
        sigwait(&signals, &received);
        litmap::log::info("signal " + std::to_string(received) + ", shutting down");
        server.stop();
    });
    server.run();
    pthread_kill(waiter.native_handle(), SIGTERM);
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"litmap: literature corpus pipeline and similarity search server"};
    app.require_subcommand(1);
    app.fallthrough();

    std::string config_path;
    bool dry_run = false;
    bool json_logs = false;
    std::string log_level = "info";
    app.add_option("-c,--config", config_path, "pipeline config file (JSON)")->required();
    app.add_flag("--dry-run", dry_run, "validate inputs and print the report without writing");
    app.add_flag("--json-logs", json_logs, "log one JSON object per line to stderr");
    app.add_option("--log-level", log_level, "trace|debug|info|warn|error")
        ->check(CLI::IsMember({"trace", "debug", "info", "warn", "error"}));

    const std::pair<Stage, const char*> stages[] = {
        {Stage::filter, "parse the bibliography and keep the configured venues"},
        {Stage::scrape, "fetch publisher pages and extract abstracts, keywords, citations"},
        {Stage::clean, "normalize text, merge keywords and drop incomplete records"},
        {Stage::embed, "compute document embeddings"},
        {Stage::project, "compute or import 2-D coordinates"},
        {Stage::export_corpus, "write the consolidated corpus JSON"},
        {Stage::serve, "serve the REST API"},
    };
    std::vector<std::pair<Stage, CLI::App*>> commands;
    std::string host;
    int port = -1;
    for (const auto& [stage, help] : stages) {
        auto* sub = app.add_subcommand(std::string(litmap::pipeline::stage_name(stage)), help);
        if (stage == Stage::serve) {
            sub->add_option("--host", host, "bind address (overrides the config)");
            sub->add_option("--port", port, "port, 0 for any free one (overrides the config)")
                ->check(CLI::Range(0, 65535));
        }
        commands.emplace_back(stage, sub);
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kConfig;
    }

    litmap::log::configure(json_logs ? litmap::log::Format::json : litmap::log::Format::text, log_level);

    Stage stage = Stage::filter;
    for (const auto& [s, sub] : commands) {
        if (sub->parsed()) {
            stage = s;
        }
    }
    const std::string tag = "[" + std::string(litmap::pipeline::stage_name(stage)) + "] ";

    try {
        auto config = litmap::pipeline::load_config(config_path);
        if (!host.empty()) {
            config.server.host = host;
        }
        if (port >= 0) {
            config.server.port = port;
        }
        if (stage == Stage::serve) {
            return serve(config, dry_run);
        }
        const auto report = litmap::pipeline::run_stage(stage, config, {dry_run});
        std::cout << report.dump(2) << '\n';
        return kOk;
    } catch (const litmap::pipeline::ConfigError& e) {
        litmap::log::error(tag + "config error: " + e.what());
        return kConfig;
    } catch (const litmap::pipeline::MissingInput& e) {
        litmap::log::error(e.what());
        return kMissing;
    } catch (const std::exception& e) {
        litmap::log::error(tag + e.what());
        return kFailed;
    }
}
