#pragma once

#include <cstddef>
#include <memory>
#include <mutex>
#include <string>
#include <string_view>

#include "bnread/analysis.hpp"
#include "bnread/classifier.hpp"
#include "bnread/formulas.hpp"
#include "bnread/lexicon.hpp"

namespace httplib {
class Server;
}

namespace bnread {

struct HttpReply {
  int status = 200;
  std::string body;  // JSON
};

struct ServiceOptions {
  std::size_t max_body_bytes = 1 << 20;
};

/// Stateless JSON API over an immutable model. The model pointer can be
/// swapped atomically while requests are in flight.
class ReadabilityService {
 public:
  ReadabilityService(Lexicons lexicons, ReadabilityConfig config, ServiceOptions options = {});
  ~ReadabilityService();

  ReadabilityService(const ReadabilityService&) = delete;
  ReadabilityService& operator=(const ReadabilityService&) = delete;

  void set_model(std::shared_ptr<const NGramModel> model);
  std::shared_ptr<const NGramModel> model() const;

  // Transport-free handlers; the HTTP routes delegate to these.
  HttpReply analyze(std::string_view body) const;
  HttpReply predict(std::string_view body) const;
  HttpReply health() const;

  /// Binds and serves until stop(). Returns false if binding fails.
  bool listen(const std::string& host, int port);
  /// Binds to an ephemeral port and returns it (or -1); serve with listen_after_bind().
  int bind_to_any_port(const std::string& host);
  bool listen_after_bind();
  void wait_until_ready() const;
  void stop();

 private:
  struct Loaded {
    std::shared_ptr<const NGramModel> model;
    std::string version;
  };

  Loaded loaded() const;
  void install_routes();

  Lexicons lexicons_;
  ReadabilityConfig config_;
  ServiceOptions options_;
  mutable std::mutex model_mutex_;
  Loaded loaded_;
  std::unique_ptr<httplib::Server> server_;
};

}  // namespace bnread
