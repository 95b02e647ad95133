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

#include "vfkt/lkt/checkpoint.h"

#include <fstream>
#include <sstream>

#include "nlohmann/json.hpp"
#include "vfkt/error.h"

namespace vfkt::lkt {
namespace {

using Json = nlohmann::ordered_json;

Json MatrixToJson(const Matrix& m) {
  return Json{{"rows", m.rows()}, {"cols", m.cols()}, {"data", m.data()}};
}

Matrix MatrixFromJson(const Json& j) {
  const auto rows = j.at("rows").get<std::size_t>();
  const auto cols = j.at("cols").get<std::size_t>();
  const auto data = j.at("data").get<std::vector<double>>();
  VFKT_ENFORCE(data.size() == rows * cols, ErrorCode::kSchemaMismatch,
               "checkpoint: matrix {}x{} carries {} values", rows, cols, data.size());
  Matrix m(rows, cols);
  std::copy(data.begin(), data.end(), m.data().begin());
  return m;
}

Json NetToJson(const numerics::DenseNet& net) {
  Json layers = Json::array();
  for (const auto& layer : net.layers()) {
    layers.push_back(Json{{"activation", numerics::ActivationName(layer.activation)},
                          {"weight", MatrixToJson(layer.weight)},
                          {"bias", layer.bias}});
  }
  return layers;
}

numerics::DenseNet NetFromJson(const Json& j) {
  std::vector<numerics::DenseLayer> layers;
  for (const auto& l : j) {
    numerics::DenseLayer layer;
    layer.activation = numerics::ParseActivation(l.at("activation").get<std::string>());
    layer.weight = MatrixFromJson(l.at("weight"));
    layer.bias = l.at("bias").get<std::vector<double>>();
    layers.push_back(std::move(layer));
  }
  return numerics::DenseNet::FromLayers(std::move(layers));
}

Json ModelToJson(const LktModel& m) {
  return Json{{"encoder", NetToJson(m.encoder)},
              {"decoder", NetToJson(m.decoder)},
              {"phi", MatrixToJson(m.phi)},
              {"mine", NetToJson(m.mine)}};
}

LktModel ModelFromJson(const Json& j, const std::string& hospital,
                       const std::vector<std::string>& columns) {
  LktModel m;
  m.encoder = NetFromJson(j.at("encoder"));
  m.decoder = NetFromJson(j.at("decoder"));
  m.phi = MatrixFromJson(j.at("phi"));
  m.phi_moments.Resize(m.phi.size());
  m.mine = NetFromJson(j.at("mine"));
  m.hospital = hospital;
  m.input_columns = columns;
  m.Validate();
  return m;
}

}  // namespace

std::vector<LktModel> LktCheckpoint::FinetunedModels() const {
  std::vector<LktModel> out;
  for (const auto& p : pairs) out.push_back(p.finetuned);
  return out;
}

void SaveCheckpoint(const std::filesystem::path& path, const LktCheckpoint& checkpoint) {
  Json j;
  j["format"] = "vfkt.lkt.checkpoint";
  j["version"] = kCheckpointVersion;
  j["config_hash"] = checkpoint.config_hash;
  j["recon_weight"] = checkpoint.recon_weight;
  j["mi_weight"] = checkpoint.mi_weight;
  j["tau"] = checkpoint.tau;
  j["input_columns"] = checkpoint.input_columns;
  j["latent_width"] =
      checkpoint.pairs.empty() ? 0 : checkpoint.pairs.front().finetuned.latent_width();
  Json pairs = Json::array();
  for (const auto& p : checkpoint.pairs) {
    pairs.push_back(Json{{"hospital", p.hospital},
                         {"h_fed", MatrixToJson(p.h_fed)},
                         {"pretrained", ModelToJson(p.pretrained)},
                         {"finetuned", ModelToJson(p.finetuned)}});
  }
  j["pairs"] = std::move(pairs);
  std::ofstream out(path);
  VFKT_ENFORCE(out.good(), ErrorCode::kIo, "cannot write checkpoint '{}'", path.string());
  out << j.dump() << '\n';
  VFKT_ENFORCE(out.good(), ErrorCode::kIo, "failed writing checkpoint '{}'", path.string());
}

LktCheckpoint LoadCheckpoint(const std::filesystem::path& path,
                             const std::optional<std::vector<std::string>>& expected_columns) {
  std::ifstream in(path);
  VFKT_ENFORCE(in.good(), ErrorCode::kIo, "cannot read checkpoint '{}'", path.string());
  Json j;
  try {
    j = Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    Throw(ErrorCode::kParse, "checkpoint '{}' is not valid JSON: {}", path.string(), e.what());
  }
  LktCheckpoint ck;
  try {
    VFKT_ENFORCE(j.value("format", "") == "vfkt.lkt.checkpoint", ErrorCode::kSchemaMismatch,
                 "'{}' is not an LKT checkpoint", path.string());
    const int version = j.at("version").get<int>();
    VFKT_ENFORCE(version == kCheckpointVersion, ErrorCode::kSchemaMismatch,
                 "checkpoint '{}' has version {}, expected {}", path.string(), version,
                 kCheckpointVersion);
    ck.config_hash = j.at("config_hash").get<std::string>();
    ck.recon_weight = j.at("recon_weight").get<double>();
    ck.mi_weight = j.at("mi_weight").get<double>();
    ck.tau = j.at("tau").get<double>();
    ck.input_columns = j.at("input_columns").get<std::vector<std::string>>();
    for (const auto& p : j.at("pairs")) {
      CheckpointPair pair;
      pair.hospital = p.at("hospital").get<std::string>();
      pair.h_fed = MatrixFromJson(p.at("h_fed"));
      pair.pretrained = ModelFromJson(p.at("pretrained"), pair.hospital, ck.input_columns);
      pair.finetuned = ModelFromJson(p.at("finetuned"), pair.hospital, ck.input_columns);
      VFKT_ENFORCE(pair.h_fed.cols() == pair.finetuned.fed_width() &&
                       pair.h_fed.cols() == pair.pretrained.fed_width(),
                   ErrorCode::kSchemaMismatch,
                   "checkpoint pair '{}': federated width {} does not match phi", pair.hospital,
                   pair.h_fed.cols());
      ck.pairs.push_back(std::move(pair));
    }
  } catch (const nlohmann::json::exception& e) {
    Throw(ErrorCode::kParse, "checkpoint '{}' is malformed: {}", path.string(), e.what());
  }
  if (expected_columns.has_value()) {
    VFKT_ENFORCE(*expected_columns == ck.input_columns, ErrorCode::kSchemaMismatch,
                 "checkpoint '{}' was trained on {} columns; the given table has {} columns with a "
                 "different schema",
                 path.string(), ck.input_columns.size(), expected_columns->size());
  }
  return ck;
}

}  // namespace vfkt::lkt
