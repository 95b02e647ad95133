// Copyright 2026 The vfkt Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//   http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "vfkt/orchestrator/message_bus.h"

#include <fstream>
#include <set>

#include "nlohmann/json.hpp"
#include "vfkt/error.h"
#include "vfkt/hash.h"

namespace vfkt::orchestrator {

std::vector<std::size_t> PayloadShape(const Payload& payload) {
  if (const auto* m = std::get_if<numerics::Matrix>(&payload)) return {m->rows(), m->cols()};
  if (const auto* v = std::get_if<std::vector<double>>(&payload)) return {v->size()};
  return {std::get<std::vector<std::uint64_t>>(payload).size()};
}

std::string PayloadChecksum(const Payload& payload) {
  if (const auto* m = std::get_if<numerics::Matrix>(&payload)) return HexDigest(Fnv1a64(m->data()));
  if (const auto* v = std::get_if<std::vector<double>>(&payload)) return HexDigest(Fnv1a64(*v));
  const auto& d = std::get<std::vector<std::uint64_t>>(payload);
  std::uint64_t state = kFnvOffset;
  for (std::uint64_t x : d) {
    const std::string_view bytes(reinterpret_cast<const char*>(&x), sizeof(x));
    state = Fnv1a64(bytes, state);
  }
  return HexDigest(state);
}

const numerics::Matrix& Message::matrix() const {
  const auto* m = std::get_if<numerics::Matrix>(payload.get());
  VFKT_ENFORCE(m != nullptr, ErrorCode::kProtocol, "message '{}' does not carry a matrix", kind);
  return *m;
}

const std::vector<double>& Message::vector() const {
  const auto* v = std::get_if<std::vector<double>>(payload.get());
  VFKT_ENFORCE(v != nullptr, ErrorCode::kProtocol, "message '{}' does not carry a vector", kind);
  return *v;
}

const std::vector<std::uint64_t>& Message::digests() const {
  const auto* v = std::get_if<std::vector<std::uint64_t>>(payload.get());
  VFKT_ENFORCE(v != nullptr, ErrorCode::kProtocol, "message '{}' does not carry digests", kind);
  return *v;
}

std::string MessageBus::BeginSession(const std::string& protocol) {
  std::lock_guard lock(mu_);
  ++sessions_;
  return protocol + "#" + std::to_string(++session_counters_[protocol]);
}

void MessageBus::Send(const std::string& session, const std::string& from, const std::string& to,
                      const std::string& kind, Payload payload) {
  VFKT_ENFORCE(from != to, ErrorCode::kProtocol, "actor '{}' sending to itself", from);
  auto shared = std::make_shared<const Payload>(std::move(payload));
  TraceEntry entry{0, session, from, to, kind, PayloadShape(*shared), PayloadChecksum(*shared)};
  std::lock_guard lock(mu_);
  entry.seq = next_seq_++;
  trace_.push_back(std::move(entry));
  channels_[{from, to}].push_back(Message{from, to, kind, session, std::move(shared)});
}

std::optional<Message> MessageBus::TryReceive(const std::string& from, const std::string& to) {
  std::lock_guard lock(mu_);
  auto it = channels_.find({from, to});
  if (it == channels_.end() || it->second.empty()) return std::nullopt;
  Message m = std::move(it->second.front());
  it->second.pop_front();
  return m;
}

bool MessageBus::HasPending(const std::string& from, const std::string& to,
                            const std::string& kind) const {
  std::lock_guard lock(mu_);
  const auto it = channels_.find({from, to});
  return it != channels_.end() && !it->second.empty() && it->second.front().kind == kind;
}

std::size_t MessageBus::pending() const {
  std::lock_guard lock(mu_);
  std::size_t n = 0;
  for (const auto& [key, queue] : channels_) n += queue.size();
  return n;
}

std::vector<TraceEntry> MessageBus::trace() const {
  std::lock_guard lock(mu_);
  return trace_;
}

std::size_t MessageBus::trace_size() const {
  std::lock_guard lock(mu_);
  return trace_.size();
}

std::size_t MessageBus::session_count() const {
  std::lock_guard lock(mu_);
  return sessions_;
}

void WriteTraceJsonl(const std::filesystem::path& path, const std::vector<TraceEntry>& trace) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path);
  VFKT_ENFORCE(out.good(), ErrorCode::kIo, "cannot write trace '{}'", path.string());
  for (const auto& e : trace) {
    nlohmann::ordered_json j;
    j["seq"] = e.seq;
    j["session"] = e.session;
    j["from"] = e.from;
    j["to"] = e.to;
    j["kind"] = e.kind;
    j["shape"] = e.shape;
    j["checksum"] = e.checksum;
    out << j.dump() << '\n';
  }
}

std::vector<TraceEntry> ReadTraceJsonl(const std::filesystem::path& path) {
  std::ifstream in(path);
  VFKT_ENFORCE(in.good(), ErrorCode::kNotFound, "cannot open trace '{}'", path.string());
  std::vector<TraceEntry> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    try {
      const auto j = nlohmann::json::parse(line);
      out.push_back(TraceEntry{j.at("seq").get<std::uint64_t>(), j.at("session").get<std::string>(),
                               j.at("from").get<std::string>(), j.at("to").get<std::string>(),
                               j.at("kind").get<std::string>(),
                               j.at("shape").get<std::vector<std::size_t>>(),
                               j.at("checksum").get<std::string>()});
    } catch (const nlohmann::json::exception& e) {
      Throw(ErrorCode::kParse, "{}:{}: {}", path.string(), line_no, e.what());
    }
  }
  return out;
}

std::vector<std::string> SessionsOf(const std::vector<TraceEntry>& trace,
                                    const std::string& protocol) {
  std::vector<std::string> out;
  std::set<std::string> seen;
  const std::string prefix = protocol + "#";
  for (const auto& e : trace) {
    if (e.session.rfind(prefix, 0) == 0 && seen.insert(e.session).second) out.push_back(e.session);
  }
  return out;
}

}  // namespace vfkt::orchestrator
