// Copyright 2026 The ectgen Authors
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

#include "ectgen/annotation_server.h"

#include <utility>

#include "httplib.h"

namespace ectgen {
namespace {

constexpr char kJson[] = "application/json";

void SendError(httplib::Response& res, int status, std::string_view code,
               const std::string& message) {
  res.status = status;
  res.set_content(Json{{"error", code}, {"message", message}}.dump(), kJson);
}

template <typename Handler>
httplib::Server::Handler Guarded(Handler handler) {
  return [handler](const httplib::Request& req, httplib::Response& res) {
    try {
      handler(req, res);
    } catch (const Error& e) {
      SendError(res, HttpStatusFor(e.code()), ErrorCodeName(e.code()),
                e.what());
    } catch (const Json::exception& e) {
      SendError(res, 400, "parse", e.what());
    }
  };
}

int ScoreField(const Json& body, const char* name) {
  const Json& value = body.at(name);
  if (!value.is_number_integer()) {
    throw Error(ErrorCode::kInvalidArgument,
                std::string(name) + " must be an integer");
  }
  return value.get<int>();
}

}  // namespace

int HttpStatusFor(ErrorCode code) {
  switch (code) {
    case ErrorCode::kUnauthenticated:
      return 401;
    case ErrorCode::kConflict:
    case ErrorCode::kLeaseExpired:
      return 409;
    case ErrorCode::kIo:
    case ErrorCode::kTransport:
      return 500;
    default:
      return 400;
  }
}

AnnotationServer::AnnotationServer(AnnotationStore& store)
    : store_(store), server_(std::make_unique<httplib::Server>()) {
  InstallRoutes();
}

AnnotationServer::~AnnotationServer() { Stop(); }

void AnnotationServer::InstallRoutes() {
  server_->set_default_headers(
      {{"Access-Control-Allow-Origin", "*"},
       {"Access-Control-Allow-Headers", "Content-Type"},
       {"Access-Control-Allow-Methods", "GET, POST, OPTIONS"}});
  server_->Options(".*", [](const httplib::Request&, httplib::Response& res) {
    res.status = 204;
  });

  server_->Get("/task", Guarded([this](const httplib::Request& req,
                                       httplib::Response& res) {
    const std::string evaluator = req.get_param_value("evaluator");
    if (evaluator.empty()) {
      throw Error(ErrorCode::kInvalidArgument, "missing evaluator parameter");
    }
    const std::optional<AnnotationTask> task = store_.NextTask(evaluator);
    res.set_content(
        Json{{"task", task ? ToJson(*task) : Json(nullptr)}}.dump(), kJson);
  }));

  server_->Post("/rating", Guarded([this](const httplib::Request& req,
                                          httplib::Response& res) {
    const Json body = Json::parse(req.body);
    if (!body.is_object()) {
      throw Error(ErrorCode::kInvalidArgument, "rating body must be an object");
    }
    const RatingRecord rating = store_.SubmitRating(
        body.at("task_id").get<std::string>(),
        body.at("evaluator_id").get<std::string>(),
        ScoreField(body, "accuracy"), ScoreField(body, "fluency"));
    res.set_content(Json(rating).dump(), kJson);
  }));

  server_->Get("/export", Guarded([this](const httplib::Request& req,
                                         httplib::Response& res) {
    RatingFilter filter;
    if (req.has_param("generation_id")) {
      filter.generation_id = req.get_param_value("generation_id");
    }
    if (req.has_param("evaluator_id")) {
      filter.evaluator_id = req.get_param_value("evaluator_id");
    }
    std::string body;
    for (const RatingRecord& r : store_.ExportRatings(filter)) {
      body += Json(r).dump();
      body += '\n';
    }
    res.set_content(body, "application/x-ndjson");
  }));

  server_->Get("/agreement", Guarded([this](const httplib::Request&,
                                            httplib::Response& res) {
    Json out = Json::object();
    for (const auto& [dimension, result] : store_.AgreementReport()) {
      out[std::string(ToString(dimension))] =
          Json{{"alpha", result.alpha}, {"ratings", result.ratings}};
    }
    res.set_content(out.dump(), kJson);
  }));
}

int AnnotationServer::Start(const std::string& host, int port) {
  int bound = port;
  if (port == 0) {
    bound = server_->bind_to_any_port(host);
  } else if (!server_->bind_to_port(host, port)) {
    bound = -1;
  }
  if (bound < 0) {
    throw Error(ErrorCode::kIo, "cannot bind " + host + ":" +
                                    std::to_string(port));
  }
  thread_ = std::thread([this] { server_->listen_after_bind(); });
  server_->wait_until_ready();
  return bound;
}

void AnnotationServer::Serve(const std::string& host, int port) {
  if (!server_->listen(host, port)) {
    throw Error(ErrorCode::kIo, "cannot serve on " + host + ":" +
                                    std::to_string(port));
  }
}

void AnnotationServer::Stop() {
  server_->stop();
  if (thread_.joinable()) thread_.join();
}

}  // namespace ectgen
