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

#pragma once

#include <cstddef>
#include <cstdint>
#include <deque>
#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "vfkt/numerics/matrix.h"

namespace vfkt::orchestrator {

using Payload =
    std::variant<numerics::Matrix, std::vector<double>, std::vector<std::uint64_t>>;

std::vector<std::size_t> PayloadShape(const Payload& payload);
// FNV-1a digest of the payload's values, as 16 hex digits.
std::string PayloadChecksum(const Payload& payload);

struct Message {
  std::string from;
  std::string to;
  std::string kind;
  std::string session;
  std::shared_ptr<const Payload> payload;

  const numerics::Matrix& matrix() const;
  const std::vector<double>& vector() const;
  const std::vector<std::uint64_t>& digests() const;
};

// One line of the audit trace. Carries no payload values.
struct TraceEntry {
  std::uint64_t seq = 0;
  std::string session;
  std::string from;
  std::string to;
  std::string kind;
  std::vector<std::size_t> shape;
  std::string checksum;
};

// In-memory point-to-point channels between named actors. Each (from, to)
// channel is FIFO; messages are immutable once sent. Every send is recorded
// in the trace. Thread-safe.
class MessageBus {
 public:
  MessageBus() = default;
  MessageBus(const MessageBus&) = delete;
  MessageBus& operator=(const MessageBus&) = delete;

  // Opens a protocol execution and returns its session id, e.g. "fedsvd#3".
  std::string BeginSession(const std::string& protocol);

  void Send(const std::string& session, const std::string& from, const std::string& to,
            const std::string& kind, Payload payload);

  // Pops the head of the (from, to) channel, if any.
  std::optional<Message> TryReceive(const std::string& from, const std::string& to);
  // True when the head of (from, to) exists and has the given kind.
  bool HasPending(const std::string& from, const std::string& to, const std::string& kind) const;

  std::size_t pending() const;
  std::vector<TraceEntry> trace() const;
  std::size_t trace_size() const;
  std::size_t session_count() const;

 private:
  mutable std::mutex mu_;
  std::map<std::pair<std::string, std::string>, std::deque<Message>> channels_;
  std::vector<TraceEntry> trace_;
  std::map<std::string, std::size_t> session_counters_;
  std::size_t sessions_ = 0;
  std::uint64_t next_seq_ = 0;
};

// Writes the trace as JSON lines: {seq, session, from, to, kind, shape, checksum}.
void WriteTraceJsonl(const std::filesystem::path& path, const std::vector<TraceEntry>& trace);
std::vector<TraceEntry> ReadTraceJsonl(const std::filesystem::path& path);

// Distinct session ids whose name starts with `protocol` + "#".
std::vector<std::string> SessionsOf(const std::vector<TraceEntry>& trace,
                                    const std::string& protocol);

}  // namespace vfkt::orchestrator
