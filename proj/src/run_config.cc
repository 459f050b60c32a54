// src/run_config.cc

// Copyright 2026  The bsk authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#include "bsk/run_config.h"

#include "bsk/error.h"
#include "bsk/io_util.h"
#include "json.hpp"

namespace bsk {

void RunConfig::Validate() const {
  model.Validate();
  if (epochs < 1) throw ConfigError("RunConfig: epochs must be positive");
  if (!(sed_threshold >= 0.0 && sed_threshold <= 1.0)) {
    throw ConfigError("RunConfig: sed_threshold must lie in [0, 1]");
  }
  if (granularity_seconds <= 0.0) {
    throw ConfigError("RunConfig: granularity must be positive");
  }
  if (optimizer.learning_rate < 0.0) {
    throw ConfigError("RunConfig: learning rate must be non-negative");
  }
}

RunConfig RunConfig::FromJson(const std::string& json_text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("run config: invalid JSON: ") + e.what());
  }

  RunConfig cfg;
  try {
    if (doc.contains("feature_set")) {
      cfg.feature_set = FeatureSetFromName(doc.at("feature_set"));
    }
    if (doc.contains("mode")) cfg.mode = TaskModeFromName(doc.at("mode"));
    if (doc.contains("seed")) cfg.seed = doc.at("seed").get<uint64_t>();
    if (doc.contains("epochs")) cfg.epochs = doc.at("epochs");
    if (doc.contains("sed_threshold")) cfg.sed_threshold = doc.at("sed_threshold");
    if (doc.contains("granularity_s")) {
      cfg.granularity_seconds = doc.at("granularity_s");
    }
    if (doc.contains("asc_macro_f1")) cfg.asc_macro_f1 = doc.at("asc_macro_f1");

    if (doc.contains("optimizer")) {
      const auto& o = doc.at("optimizer");
      if (o.contains("learning_rate")) cfg.optimizer.learning_rate = o.at("learning_rate");
      if (o.contains("beta1")) cfg.optimizer.beta1 = o.at("beta1");
      if (o.contains("beta2")) cfg.optimizer.beta2 = o.at("beta2");
      if (o.contains("epsilon")) cfg.optimizer.epsilon = o.at("epsilon");
    }

    if (doc.contains("model")) {
      const auto& m = doc.at("model");
      ModelConfig& mc = cfg.model;
      if (m.contains("mel_bands")) mc.mel_bands = m.at("mel_bands");
      if (m.contains("frames")) mc.frames = m.at("frames");
      if (m.contains("kernel")) {
        mc.kernel_h = m.at("kernel")[0];
        mc.kernel_w = m.at("kernel")[1];
      }
      if (m.contains("conv_filters")) {
        mc.shared_filters = m.at("conv_filters")[0];
        mc.asc_filters = m.at("conv_filters")[1];
      }
      if (m.contains("pooling")) {
        const auto& mp = m.at("pooling");
        if (mp.size() != 5) {
          throw ParseError("run config: model.pooling needs 5 factors");
        }
        for (int i = 0; i < 5; ++i) mc.pooling[i] = mp[i];
      }
      if (m.contains("gru_features")) mc.gru_features = m.at("gru_features");
      if (m.contains("dense")) {
        const auto& g = m.at("dense");
        if (g.size() != 3) throw ParseError("run config: model.dense needs 3 widths");
        mc.sed_dense = g[0];
        mc.asc_dense1 = g[1];
        mc.asc_dense2 = g[2];
      }
      if (m.contains("sed_classes")) mc.sed_classes = m.at("sed_classes");
      if (m.contains("asc_classes")) mc.asc_classes = m.at("asc_classes");
      if (m.contains("asc_loss_weight")) mc.asc_loss_weight = m.at("asc_loss_weight");
    }

    if (doc.contains("paths")) {
      const auto& p = doc.at("paths");
      if (p.contains("manifest")) cfg.paths.manifest = p.at("manifest");
      if (p.contains("feature_dir")) cfg.paths.feature_dir = p.at("feature_dir");
      if (p.contains("checkpoint")) cfg.paths.checkpoint = p.at("checkpoint");
      if (p.contains("report")) cfg.paths.report = p.at("report");
      if (p.contains("train_log")) cfg.paths.train_log = p.at("train_log");
    }
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("run config: ") + e.what());
  }
  return cfg;
}

RunConfig RunConfig::FromJsonFile(const std::string& path) {
  try {
    return FromJson(ReadFileText(path));
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what());
  }
}

std::string RunConfig::ToJson() const {
  nlohmann::json doc;
  doc["feature_set"] = FeatureSetName(feature_set);
  doc["mode"] = TaskModeName(mode);
  doc["seed"] = seed;
  doc["epochs"] = epochs;
  doc["sed_threshold"] = sed_threshold;
  doc["granularity_s"] = granularity_seconds;
  doc["asc_macro_f1"] = asc_macro_f1;
  doc["optimizer"] = {{"learning_rate", optimizer.learning_rate},
                      {"beta1", optimizer.beta1},
                      {"beta2", optimizer.beta2},
                      {"epsilon", optimizer.epsilon}};
  doc["model"] = {{"mel_bands", model.mel_bands},
                  {"frames", model.frames},
                  {"kernel", {model.kernel_h, model.kernel_w}},
                  {"conv_filters", {model.shared_filters, model.asc_filters}},
                  {"pooling", model.pooling},
                  {"gru_features", model.gru_features},
                  {"dense", {model.sed_dense, model.asc_dense1, model.asc_dense2}},
                  {"sed_classes", model.sed_classes},
                  {"asc_classes", model.asc_classes},
                  {"asc_loss_weight", model.asc_loss_weight}};
  doc["paths"] = {{"manifest", paths.manifest},
                  {"feature_dir", paths.feature_dir},
                  {"checkpoint", paths.checkpoint},
                  {"report", paths.report},
                  {"train_log", paths.train_log}};
  return doc.dump(2) + "\n";
}

}  // namespace bsk
