#include "bnread/service.hpp"

#include <httplib.h>

#include "bnread/error.hpp"
#include "bnread/json_io.hpp"
#include "bnread/script.hpp"

namespace bnread {

namespace {

constexpr const char* kJsonMime = "application/json";

HttpReply error_reply(int status, const std::string& message) {
  return {status, json::render(json::Json{{"error", message}})};
}

}  // namespace

ReadabilityService::ReadabilityService(Lexicons lexicons, ReadabilityConfig config, ServiceOptions options)
    : lexicons_(std::move(lexicons)),
      config_(std::move(config)),
      options_(options),
      server_(std::make_unique<httplib::Server>()) {
  install_routes();
}

ReadabilityService::~ReadabilityService() { stop(); }

void ReadabilityService::set_model(std::shared_ptr<const NGramModel> model) {
  Loaded next;
  if (model) next.version = model->fingerprint();
  next.model = std::move(model);
  std::lock_guard lock(model_mutex_);
  loaded_ = std::move(next);
}

std::shared_ptr<const NGramModel> ReadabilityService::model() const { return loaded().model; }

ReadabilityService::Loaded ReadabilityService::loaded() const {
  std::lock_guard lock(model_mutex_);
  return loaded_;
}

HttpReply ReadabilityService::analyze(std::string_view body) const {
  if (body.size() > options_.max_body_bytes) return error_reply(413, "request body too large");
  json::Json request = json::Json::parse(body, nullptr, false);
  if (request.is_discarded() || !request.is_object()) return error_reply(400, "malformed JSON body");
  const auto text = request.find("text");
  if (text == request.end() || !text->is_string()) return error_reply(400, "field 'text' must be a string");

  const Loaded current = loaded();
  if (!current.model) return error_reply(503, "model not loaded");
  try {
    const DocumentAnalysis a = analyze_document(text->get<std::string>(), current.model.get(), lexicons_, config_);
    return {200, json::render(json::to_json(a))};
  } catch (const InvalidInput& e) {
    return error_reply(400, e.what());
  }
}

HttpReply ReadabilityService::predict(std::string_view body) const {
  if (body.size() > options_.max_body_bytes) return error_reply(413, "request body too large");
  json::Json request = json::Json::parse(body, nullptr, false);
  if (request.is_discarded() || !request.is_object()) return error_reply(400, "malformed JSON body");
  const auto sentences = request.find("sentences");
  if (sentences == request.end() || !sentences->is_array()) {
    return error_reply(400, "field 'sentences' must be an array of strings");
  }
  for (const auto& s : *sentences) {
    if (!s.is_string()) return error_reply(400, "field 'sentences' must be an array of strings");
  }

  const Loaded current = loaded();
  if (!current.model) return error_reply(503, "model not loaded");
  json::Json predictions = json::Json::array();
  for (const auto& s : *sentences) {
    const std::string text = script::normalize(s.get<std::string>());
    json::Json p = json::to_json(current.model->predict(text));
    json::Json entry{{"text", text}};
    entry.update(p);
    predictions.push_back(std::move(entry));
  }
  return {200, json::render(json::Json{{"predictions", std::move(predictions)}})};
}

HttpReply ReadabilityService::health() const {
  const Loaded current = loaded();
  if (!current.model) {
    return {503, json::render(json::Json{{"status", "model not loaded"}, {"model_version", nullptr}})};
  }
  return {200, json::render(json::Json{{"status", "ok"}, {"model_version", current.version}})};
}

void ReadabilityService::install_routes() {
  server_->set_payload_max_length(options_.max_body_bytes);
  auto send = [](httplib::Response& res, const HttpReply& reply) {
    res.status = reply.status;
    res.set_content(reply.body, kJsonMime);
  };
  server_->Post("/api/analyze", [this, send](const httplib::Request& req, httplib::Response& res) {
    send(res, analyze(req.body));
  });
  server_->Post("/api/predict", [this, send](const httplib::Request& req, httplib::Response& res) {
    send(res, predict(req.body));
  });
  server_->Get("/api/health", [this, send](const httplib::Request&, httplib::Response& res) { send(res, health()); });
  server_->set_exception_handler([](const httplib::Request&, httplib::Response& res, std::exception_ptr ep) {
    std::string message = "internal error";
    try {
      if (ep) std::rethrow_exception(ep);
    } catch (const std::exception& e) {
      message = e.what();
    } catch (...) {
    }
    const HttpReply reply = error_reply(500, message);
    res.status = reply.status;
    res.set_content(reply.body, kJsonMime);
  });
  server_->set_error_handler([](const httplib::Request&, httplib::Response& res) {
    if (!res.body.empty()) return;
    std::string message = "request failed";
    if (res.status == 404) message = "not found";
    else if (res.status == 413) message = "request body too large";
    res.set_content(json::render(json::Json{{"error", message}}), kJsonMime);
  });
}

bool ReadabilityService::listen(const std::string& host, int port) { return server_->listen(host, port); }

int ReadabilityService::bind_to_any_port(const std::string& host) { return server_->bind_to_any_port(host); }

bool ReadabilityService::listen_after_bind() { return server_->listen_after_bind(); }

void ReadabilityService::wait_until_ready() const { server_->wait_until_ready(); }

void ReadabilityService::stop() {
  if (server_) server_->stop();
}

}  // namespace bnread
