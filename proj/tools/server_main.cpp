// Copyright 2026 The cachelab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Workload server: GET /compute runs a simulated computation, either directly
// (--mode uncached) or through a TTL cache (--mode cached).

#include <csignal>
#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "cachelab/workload_server.hpp"

int main(int argc, char** argv) {
  CLI::App app{"cachelab workload server"};
  std::string mode_text = "uncached";
  std::int64_t delay_ms = 1000;
  std::optional<std::int64_t> ttl_ms;
  int port = 8080;
  std::string host = "127.0.0.1";

  app.add_option("--mode", mode_text, "uncached or cached")
      ->check(CLI::IsMember({"uncached", "cached"}));
  app.add_option("--delay-ms", delay_ms, "simulated computation time in ms")->check(CLI::PositiveNumber);
  app.add_option("--ttl-ms", ttl_ms, "cache time-to-live in ms (cached mode only)");
  app.add_option("--port", port, "TCP port, 0 for any free port")->check(CLI::Range(0, 65535));
  app.add_option("--host", host, "listen address");
  CLI11_PARSE(app, argc, argv);

  cachelab::ServerConfig config;
  config.mode = *cachelab::parse_server_mode(mode_text);
  config.delay_ms = delay_ms;
  config.ttl_ms = ttl_ms;
  config.listen_port = port;
  try {
    config.validate();
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n\n" << app.help();
    return 2;
  }

  // Block termination signals before any thread exists so only sigwait sees them.
  sigset_t signals;
  sigemptyset(&signals);
  sigaddset(&signals, SIGINT);
  sigaddset(&signals, SIGTERM);
  pthread_sigmask(SIG_BLOCK, &signals, nullptr);

  cachelab::WorkloadService service(config);
  cachelab::HttpServer server(service);
  try {
    server.bind(host, port);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  server.start();
  std::cout << "listening on " << host << ':' << server.port() << " mode=" << mode_text
            << " delay_ms=" << delay_ms;
  if (ttl_ms) std::cout << " ttl_ms=" << *ttl_ms;
  std::cout << std::endl;

  int sig = 0;
  sigwait(&signals, &sig);
  server.stop();
  return 0;
}
