// tests/acceptance.cc

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

// Release gate: every check below must hold before a build ships. Each
// criterion prints one PASS/FAIL line with its runtime; the process exits
// with the number of failures.

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <string>
#include <vector>

#include "bsk/audio.h"
#include "bsk/commands.h"
#include "bsk/features.h"
#include "bsk/feature_io.h"
#include "bsk/io_util.h"
#include "bsk/mel.h"
#include "bsk/metrics.h"
#include "bsk/network.h"
#include "bsk/rng.h"
#include "bsk/run_config.h"
#include "bsk/stft.h"
#include "bsk/synth.h"
#include "bsk/targets.h"
#include "bsk/train.h"
#include "bsk/wav.h"
#include "oracles.h"

using namespace bsk;
namespace fs = std::filesystem;

namespace {

struct Criterion {
  int id;
  std::string name;
  std::function<bool(std::string*)> run;
  double budget_seconds;  // 0 = no budget
};

// ---------------------------------------------------------------------------
// Shared helpers

std::vector<double> RandomSignal(size_t length, uint64_t seed, double amp = 0.8) {
  bsk_test::TestRand rand(seed);
  std::vector<double> x(length);
  for (auto& v : x) v = amp * rand.Range(-1.0, 1.0);
  return x;
}

AudioClip RandomStereo(size_t length, uint64_t seed, int rate = 16000) {
  return AudioClip({RandomSignal(length, seed), RandomSignal(length, seed + 7919)},
                   rate);
}

ModelConfig TinyConfig() {
  ModelConfig c;
  c.mel_bands = 8;
  c.frames = 8;
  c.kernel_h = c.kernel_w = 3;
  c.shared_filters = 2;
  c.asc_filters = 2;
  c.pooling = {2, 2, 2, 2, 2};
  c.gru_features = 4;
  c.sed_dense = 4;
  c.asc_dense1 = 4;
  c.asc_dense2 = 3;
  c.sed_classes = 3;
  c.asc_classes = 2;
  c.asc_loss_weight = 0.5;
  return c;
}

ModelConfig MicroModelConfig() {
  ModelConfig c;
  c.mel_bands = 32;
  c.frames = 100;
  c.kernel_h = c.kernel_w = 3;
  c.shared_filters = 8;
  c.asc_filters = 8;
  c.pooling = {2, 2, 2, 5, 5};
  c.gru_features = 16;
  c.sed_dense = 16;
  c.asc_dense1 = 32;
  c.asc_dense2 = 16;
  c.sed_classes = 4;
  c.asc_classes = 2;
  c.asc_loss_weight = 0.0001;
  return c;
}

// ---------------------------------------------------------------------------
// 1. DSP oracle equivalence

bool CheckDspOracles(std::string* detail) {
  double worst_stft = 0.0, worst_mel = 0.0;

  for (int trial = 0; trial < 50; ++trial) {
    const auto cfg = StftConfig::FromWindow(64);
    const auto x = RandomSignal(96 + 17 * (trial % 7), 100 + trial);
    const auto spec = StftChannel(x, cfg);
    const auto w = HammingWindow(cfg.window_length);
    for (size_t n = 0; n < spec.num_frames; ++n) {
      std::vector<double> padded(cfg.fft_size, 0.0);
      for (int i = 0; i < cfg.window_length; ++i) {
        padded[i] = x[n * cfg.hop_length + i] * w[i];
      }
      const auto oracle = bsk_test::NaiveDft(padded);
      double scale = 0.0;
      for (size_t k = 0; k < spec.num_bins; ++k) {
        scale = std::max(scale, std::abs(oracle[k]));
      }
      if (scale == 0.0) scale = 1.0;
      for (size_t k = 0; k < spec.num_bins; ++k) {
        const double err =
            std::abs(std::abs(spec.at(n, k)) - std::abs(oracle[k])) / scale;
        worst_stft = std::max(worst_stft, err);
      }
    }
  }

  for (int trial = 0; trial < 50; ++trial) {
    bsk_test::TestRand rand(500 + trial);
    ComplexSpectrogram spec;
    spec.num_frames = 8;
    spec.num_bins = 16;
    spec.fft_size = 30;
    spec.bins.resize(spec.num_frames * spec.num_bins);
    for (auto& v : spec.bins) v = {rand.Range(-2.0, 2.0), rand.Range(-2.0, 2.0)};
    MelFilterbank bank;
    bank.num_filters = 6;
    bank.num_bins = 16;
    bank.weights.resize(bank.num_filters * bank.num_bins);
    bank.band_centers_hz.assign(bank.num_filters, 0.0);
    for (auto& v : bank.weights) v = rand.Uniform();

    const auto out = ComplexMel(spec, bank);
    const auto oracle = bsk_test::TripleLoopProjection(
        spec.bins, spec.num_frames, spec.num_bins, bank.weights, bank.num_filters);
    for (size_t i = 0; i < out.bins.size(); ++i) {
      const double err =
          std::abs(out.bins[i] - oracle[i]) / (1.0 + std::abs(oracle[i]));
      worst_mel = std::max(worst_mel, err);
    }
  }

  char buf[160];
  std::snprintf(buf, sizeof buf, "worst stft err %.2e (<=1e-9), mel err %.2e (<=1e-12)",
                worst_stft, worst_mel);
  *detail = buf;
  return worst_stft <= 1e-9 && worst_mel <= 1e-12;
}

// ---------------------------------------------------------------------------
// 2. Feature formula suite

bool CheckFeatureFormulas(std::string* detail) {
  int failures = 0;
  auto expect = [&](bool ok, const char* what) {
    if (!ok) {
      ++failures;
      std::fprintf(stderr, "  feature check failed: %s\n", what);
    }
  };

  {  // log magnitude formula cases
    ComplexMelSpectrogram x;
    x.num_frames = 1;
    x.num_filters = 2;
    x.bins = {{0.0, 0.0}, {1.0, 0.0}};
    const auto lm = LogMel(x);
    expect(std::abs(lm.data[0] - std::log(1e-10)) <= 1e-12, "logmel eps floor");
    expect(std::abs(lm.data[1]) <= 1e-9, "logmel unit magnitude");
  }
  {  // level ratio cases
    ComplexMelSpectrogram l, r;
    l.num_frames = r.num_frames = 1;
    l.num_filters = r.num_filters = 2;
    l.bins = {{1.0, 0.0}, {0.4, -0.3}};
    r.bins = l.bins;
    const auto unit = Ild(l, r);
    expect(unit.data[0] == 1.0 && unit.data[1] == 1.0, "ild of equals");
    r.bins = {{0.0, 0.0}, {0.2, -0.15}};
    const auto ratio = Ild(l, r);
    expect(std::abs(ratio.data[0] - 1e10) <= 1e4, "ild eps saturation");
    expect(std::abs(ratio.data[1] - 2.0) <= 1e-9, "ild factor two");
  }
  {  // phase cases
    ComplexMelSpectrogram x;
    x.num_frames = 1;
    x.num_filters = 3;
    x.bins = {{2.0, 0.0}, {0.0, 1.5}, {0.0, 0.0}};
    const auto ph = Phase(x);
    expect(ph.data[0] == 0.0, "phase positive real");
    expect(std::abs(ph.data[1] - M_PI / 2) <= 1e-15, "phase positive imaginary");
    expect(ph.data[2] == 0.0, "phase of zero");
  }
  {  // phase difference cases
    bsk_test::TestRand rand(42);
    ComplexMelSpectrogram l;
    l.num_frames = 2;
    l.num_filters = 4;
    l.bins.resize(8);
    for (auto& v : l.bins) v = {rand.Range(-1.0, 1.0), rand.Range(-1.0, 1.0)};
    auto r = l;
    const auto zero = Ipd(l, r);
    for (double v : zero.data) expect(v == 0.0, "ipd of equals");
    for (auto& v : r.bins) v = -v;
    for (double v : Ipd(l, r).data) {
      expect(std::abs(std::abs(v) - M_PI) <= 1e-12 && v > 0, "ipd sign flip");
    }
  }
  {  // sin/cos cases
    RealMatrix ipd(1, 2);
    ipd.data = {0.0, M_PI};
    RealMatrix si, ci;
    SinCosIpd(ipd, &si, &ci);
    expect(si.data[0] == 0.0 && ci.data[0] == 1.0, "sincos at zero");
    expect(std::abs(si.data[1]) <= 1e-15 && std::abs(ci.data[1] + 1.0) <= 1e-15,
           "sincos at pi");
    bsk_test::TestRand rand(43);
    RealMatrix rnd(4, 4);
    for (auto& v : rnd.data) v = rand.Range(-M_PI, M_PI);
    SinCosIpd(rnd, &si, &ci);
    for (size_t i = 0; i < rnd.data.size(); ++i) {
      expect(std::abs(si.data[i] * si.data[i] + ci.data[i] * ci.data[i] - 1.0) <=
                 1e-12,
             "sincos identity");
    }
  }
  {  // correlation trivials
    const auto cfg = StftConfig::FromWindow(256);
    const auto noise = RandomSignal(512, 4242);
    const auto spec = StftChannel(noise, cfg);
    GccLagMap lags;
    const auto gcc = GccPhat(spec, spec, 32, &lags);
    for (size_t n = 0; n < gcc.rows; ++n) {
      size_t argmax = 0;
      for (size_t i = 0; i < gcc.cols; ++i) {
        if (gcc.at(n, i) > gcc.at(n, argmax)) argmax = i;
      }
      expect(lags.lag_values[argmax] == 0, "gcc zero-delay peak");
    }
    std::vector<double> silence(512, 0.0);
    const auto silent_spec = StftChannel(silence, cfg);
    const auto silent_gcc = GccPhat(silent_spec, silent_spec, 32, nullptr);
    for (double v : silent_gcc.data) expect(std::isfinite(v), "gcc silence finite");
  }

  // Analytic tone phase through the full pipeline.
  {
    const int sr = 16000, delay = 4;
    const double freq = 500.0;
    std::vector<double> left(2048);
    for (size_t t = 0; t < left.size(); ++t) {
      left[t] = std::sin(2.0 * M_PI * freq * static_cast<double>(t) / sr);
    }
    std::vector<double> right(left.size(), 0.0);
    for (size_t t = delay; t < left.size(); ++t) right[t] = left[t - delay];
    const auto cfg = StftConfig::ForSampleRate(sr);
    const auto bank = MakeMelFilterbank(32, cfg.num_bins(), sr, 0.0, sr / 2.0);
    const auto ml = ComplexMel(StftChannel(left, cfg), bank);
    const auto mr = ComplexMel(StftChannel(right, cfg), bank);
    const auto ipd = Ipd(ml, mr);
    const auto power = LogMel(ml);
    const double expected = 2.0 * M_PI * freq * delay / sr;
    size_t dominant = 0;
    for (size_t m = 0; m < power.cols; ++m) {
      if (power.at(1, m) > power.at(1, dominant)) dominant = m;
    }
    expect(std::abs(ipd.at(1, dominant) - expected) <= 0.05, "ipd analytic tone");
  }

  // Properties over 100 random clips.
  const int sr = 16000;
  FeatureConfig fc = FeatureConfig::ForClip(sr, 12);
  for (int trial = 0; trial < 100; ++trial) {
    const AudioClip clip = RandomStereo(1400, 900 + trial, sr);

    const auto specs = Stft(clip, fc.stft);
    const auto bank = MakeMelFilterbank(12, fc.stft.num_bins(), sr, 0.0, sr / 2.0);
    const auto ml = ComplexMel(specs[0], bank);
    const auto mr = ComplexMel(specs[1], bank);

    const auto ipd_lr = Ipd(ml, mr);
    const auto ipd_rl = Ipd(mr, ml);
    for (size_t i = 0; i < ipd_lr.data.size(); ++i) {
      expect(std::abs(WrapAngle(ipd_lr.data[i] + ipd_rl.data[i])) <= 1e-9,
             "ipd antisymmetry");
    }
    const auto ild_lr = Ild(ml, mr);
    const auto ild_rl = Ild(mr, ml);
    for (size_t i = 0; i < ild_lr.data.size(); ++i) {
      expect(std::abs(ild_lr.data[i] * ild_rl.data[i] - 1.0) <= 1e-9,
             "ild reciprocity");
    }

    // Gain invariance.
    const double gain = 2.5;
    std::vector<double> lg(clip.channels[0]), rg(clip.channels[1]);
    for (auto& v : lg) v *= gain;
    for (auto& v : rg) v *= gain;
    const AudioClip scaled({lg, rg}, sr);
    const auto base_sincos = StackFeatures(FeatureSet::kMelSinCos, clip, fc);
    const auto amp_sincos = StackFeatures(FeatureSet::kMelSinCos, scaled, fc);
    for (size_t ch = 2; ch < 4; ++ch) {
      for (size_t t = 0; t < base_sincos.frames; ++t) {
        for (size_t m = 0; m < base_sincos.bands; ++m) {
          expect(std::abs(amp_sincos.at(ch, t, m) - base_sincos.at(ch, t, m)) <=
                     1e-6,
                 "sincos gain invariance");
        }
      }
    }
    const double shift = std::log(gain);
    for (size_t t = 0; t < base_sincos.frames; ++t) {
      for (size_t m = 0; m < base_sincos.bands; ++m) {
        expect(std::abs((amp_sincos.at(0, t, m) - base_sincos.at(0, t, m)) - shift) <=
                   1e-6,
               "logmel gain shift");
      }
    }

    // No NaN/Inf in any layout, silence included.
    for (int set_id = 0; set_id <= 6; ++set_id) {
      const auto tensor = StackFeatures(static_cast<FeatureSet>(set_id), clip, fc);
      for (float v : tensor.data) {
        if (!std::isfinite(v)) {
          expect(false, "finite features");
          break;
        }
      }
    }
  }
  {
    const AudioClip silent({std::vector<double>(1400, 0.0),
                            std::vector<double>(1400, 0.0)}, sr);
    for (int set_id = 0; set_id <= 6; ++set_id) {
      const auto tensor = StackFeatures(static_cast<FeatureSet>(set_id), silent, fc);
      for (float v : tensor.data) expect(std::isfinite(v), "finite on silence");
    }
  }

  *detail = failures == 0 ? "all formula cases and 100-clip properties hold"
                          : std::to_string(failures) + " checks failed";
  return failures == 0;
}

// ---------------------------------------------------------------------------
// 3. GCC-PHAT delay recovery

bool CheckGccDelayRecovery(std::string* detail) {
  // Fix the sign convention against the time-domain oracle first.
  {
    const int delay = 5;
    const auto cfg = StftConfig::FromWindow(256);
    const auto left = RandomSignal(512, 31337);
    std::vector<double> right(left.size(), 0.0);
    for (size_t t = delay; t < left.size(); ++t) right[t] = left[t - delay];

    const auto w = HammingWindow(cfg.window_length);
    std::vector<double> lw(cfg.fft_size, 0.0), rw(cfg.fft_size, 0.0);
    for (int i = 0; i < cfg.window_length; ++i) {
      lw[i] = left[i] * w[i];
      rw[i] = right[i] * w[i];
    }
    const auto cc = bsk_test::CircularCrossCorrelation(lw, rw);
    int oracle_lag = 0;
    double best = -1e300;
    for (int d = -16; d < 16; ++d) {
      const size_t idx = static_cast<size_t>((d + cfg.fft_size) % cfg.fft_size);
      if (cc[idx] > best) {
        best = cc[idx];
        oracle_lag = d;
      }
    }
    const auto spec_l = StftChannel(left, cfg);
    const auto spec_r = StftChannel(right, cfg);
    GccLagMap lags;
    const auto gcc = GccPhat(spec_l, spec_r, 32, &lags);
    size_t argmax = 0;
    for (size_t i = 0; i < gcc.cols; ++i) {
      if (gcc.at(0, i) > gcc.at(0, argmax)) argmax = i;
    }
    if (oracle_lag != delay || lags.lag_values[argmax] != oracle_lag) {
      *detail = "sign convention disagrees with the time-domain oracle";
      return false;
    }
  }

  // Recovery across the ITD range at 30 dB SNR.
  size_t total = 0, hits = 0;
  for (int itd = -8; itd <= 8; ++itd) {
    SynthSpec spec;
    spec.duration_seconds = 1.0;
    spec.sample_rate = 16000;
    spec.noise_floor_db = -30.0;
    spec.seed = 1000 + static_cast<uint64_t>(itd + 8);
    SynthEvent ev;
    ev.event_class = "wide";
    ev.onset_seconds = 0.0;
    ev.offset_seconds = 1.0;
    ev.kind = SourceKind::kNoiseBand;
    ev.param1 = 100.0;
    ev.param2 = 7800.0;
    ev.amplitude = 0.5;
    ev.itd_samples = itd;
    spec.events = {ev};
    const auto [clip, meta] = Render(spec);

    const auto cfg = StftConfig::ForSampleRate(clip.sample_rate);
    const auto specs = Stft(clip, cfg);
    GccLagMap lags;
    const auto gcc = GccPhat(specs[0], specs[1], 32, &lags);
    for (size_t n = 0; n < gcc.rows; ++n) {
      size_t argmax = 0;
      for (size_t i = 0; i < gcc.cols; ++i) {
        if (gcc.at(n, i) > gcc.at(n, argmax)) argmax = i;
      }
      ++total;
      if (lags.lag_values[argmax] == itd) ++hits;
    }
  }
  const double rate = static_cast<double>(hits) / static_cast<double>(total);
  char buf[120];
  std::snprintf(buf, sizeof buf, "argmax hit rate %.1f%% over %zu frames (>= 95%%)",
                100.0 * rate, total);
  *detail = buf;
  return rate >= 0.95;
}

// ---------------------------------------------------------------------------
// 4. Gradient check

bool CheckGradients(std::string* detail) {
  const double fd_step = 1e-5;
  double worst = 0.0;
  std::string worst_at;

  const uint64_t seeds[5] = {11, 22, 33, 44, 55};
  for (uint64_t seed : seeds) {
    MtlNetwork net(TinyConfig(), TaskMode::kMtl, 2);
    Rng rng(seed);
    net.InitParams(&rng);

    bsk_test::TestRand rand(seed * 7 + 1);
    Tensor x({2, 8, 8});
    for (auto& v : x.data) v = rand.Range(-1.0, 1.0);
    BinaryMatrix sed(8, 3);
    for (auto& v : sed.data) v = rand.Uniform() < 0.3 ? 1 : 0;
    const auto scene = SceneOneHot(rand.Int(0, 1), 2);
    const int valid = 6;
    const double w = net.config().asc_loss_weight;

    const auto loss_at = [&]() {
      const ForwardResult out = net.Forward(x, true);
      return ComputeLoss(out, sed, scene, valid, w).total;
    };

    const ForwardResult out = net.Forward(x, true);
    Tensor grad_sed, grad_asc;
    LossGradients(out, sed, scene, valid, w, &grad_sed, &grad_asc);
    net.ZeroGrads();
    net.Backward(grad_sed, grad_asc);

    auto params = net.Params();
    std::vector<Tensor> analytic;
    for (const auto& p : params) analytic.push_back(*p.grad);

    for (size_t pi = 0; pi < params.size(); ++pi) {
      Tensor& value = *params[pi].value;
      for (size_t j = 0; j < value.numel(); ++j) {
        const double original = value.data[j];
        value.data[j] = original + fd_step;
        const double lp = loss_at();
        value.data[j] = original - fd_step;
        const double lm = loss_at();
        value.data[j] = original;
        const double fd = (lp - lm) / (2.0 * fd_step);
        const double a = analytic[pi].data[j];
        const double err =
            std::abs(a - fd) / std::max({std::abs(a), std::abs(fd), 1e-6});
        if (err > worst) {
          worst = err;
          worst_at = params[pi].name + " seed " + std::to_string(seed);
        }
      }
    }
  }
  char buf[200];
  std::snprintf(buf, sizeof buf, "max relative error %.3e (<= 1e-4) at %s", worst,
                worst_at.c_str());
  *detail = buf;
  return worst <= 1e-4;
}

// ---------------------------------------------------------------------------
// 5. Shape contract

bool CheckShapeContract(std::string* detail) {
  {
    MtlNetwork net(ModelConfig::Tut20162017(), TaskMode::kMtl, 2);
    Rng rng(1);
    net.InitParams(&rng);
    bsk_test::TestRand rand(2);
    Tensor x({2, 500, 64});
    for (auto& v : x.data) v = rand.Range(-0.5, 0.5);
    const ForwardResult out = net.Forward(x, false);
    if (out.sed_probs.shape != std::vector<size_t>{500, 25} ||
        out.asc_probs.numel() != 4) {
      *detail = "first configuration produced wrong shapes";
      return false;
    }
    double sum = 0.0;
    for (double v : out.asc_probs.data) sum += v;
    if (std::abs(sum - 1.0) > 1e-9) {
      *detail = "scene probabilities do not normalize";
      return false;
    }
  }
  {
    MtlNetwork net(ModelConfig::TutSed2009(), TaskMode::kMtl, 1);
    Rng rng(3);
    net.InitParams(&rng);
    bsk_test::TestRand rand(4);
    Tensor x({1, 1000, 40});
    for (auto& v : x.data) v = rand.Range(-0.5, 0.5);
    const ForwardResult out = net.Forward(x, false);
    if (out.sed_probs.shape != std::vector<size_t>{1000, 63} ||
        out.asc_probs.numel() != 10) {
      *detail = "second configuration produced wrong shapes";
      return false;
    }
  }
  *detail = "(2,500,64)->(500x25, 4) and (1,1000,40)->(1000x63, 10)";
  return true;
}

// ---------------------------------------------------------------------------
// 6. Loss weighting

bool CheckLossWeighting(std::string* detail) {
  bsk_test::TestRand rand(66);
  double worst_identity = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    ForwardResult out;
    out.sed_probs = Tensor({10, 4});
    for (auto& v : out.sed_probs.data) v = rand.Range(0.02, 0.98);
    out.asc_probs = Tensor({size_t{1}, size_t{4}});
    double sum = 0.0;
    for (auto& v : out.asc_probs.data) {
      v = rand.Range(0.05, 1.0);
      sum += v;
    }
    for (auto& v : out.asc_probs.data) v /= sum;

    BinaryMatrix sed(10, 4);
    for (auto& v : sed.data) v = rand.Uniform() < 0.4 ? 1 : 0;
    const auto scene = SceneOneHot(rand.Int(0, 3), 4);

    const double w = 0.0001;
    const LossReport report = ComputeLoss(out, sed, scene, 10, w);
    worst_identity = std::max(
        worst_identity, std::abs((report.total - report.sed_loss) - w * report.asc_loss));
  }

  ForwardResult uniform;
  uniform.asc_probs = Tensor({size_t{1}, size_t{4}});
  uniform.asc_probs.Fill(0.25);
  BinaryMatrix empty_sed;
  const LossReport uniform_report =
      ComputeLoss(uniform, empty_sed, SceneOneHot(2, 4), 0, 1.0);
  const double ln4_err = std::abs(uniform_report.asc_loss - std::log(4.0));

  char buf[160];
  std::snprintf(buf, sizeof buf,
                "identity residual %.2e (<=1e-12), uniform-CE error %.2e (<=1e-9)",
                worst_identity, ln4_err);
  *detail = buf;
  return worst_identity <= 1e-12 && ln4_err <= 1e-9;
}

// ---------------------------------------------------------------------------
// 7. Metric hand-cases

bool CheckMetricHandCases(std::string* detail) {
  int failures = 0;
  auto expect = [&](bool ok, const char* what) {
    if (!ok) {
      ++failures;
      std::fprintf(stderr, "  metric check failed: %s\n", what);
    }
  };

  {
    bsk_test::TestRand rand(7);
    BinaryMatrix ref(6, 3);
    for (auto& v : ref.data) v = rand.Uniform() < 0.5 ? 1 : 0;
    ref.at(0, 0) = 1;  // ensure non-empty
    const auto s = SedScores(ref, ref);
    expect(s.ErrorRate() == 0.0 && s.F1Percent() == 100.0, "perfect match");
  }
  {
    BinaryMatrix ref(2, 1), pred(2, 1);
    ref.at(0, 0) = 1;
    pred.at(1, 0) = 1;
    const auto s = SedScores(ref, pred);
    expect(s.subs == 0 && s.dels == 1 && s.ins == 1 && s.n_ref == 1 &&
               s.ErrorRate() == 2.0 && s.F1Percent() == 0.0,
           "cross-segment D+I case");
  }
  {
    BinaryMatrix ref(1, 2), pred(1, 2);
    ref.at(0, 0) = 1;
    pred.at(0, 1) = 1;
    const auto s = SedScores(ref, pred);
    expect(s.subs == 1 && s.dels == 0 && s.ins == 0 && s.ErrorRate() == 1.0 &&
               s.F1Percent() == 0.0,
           "same-segment substitution case");
  }
  expect(AscF1Micro({0, 1, 2}, {0, 1, 2}, 3) == 100.0, "scene all correct");
  expect(AscF1Micro({0, 0, 0, 0, 0, 1, 1, 1, 1, 1},
                    {0, 0, 0, 0, 0, 0, 0, 0, 0, 0}, 2) == 50.0,
         "scene half correct");
  {
    bsk_test::TestRand rand(8);
    std::vector<int> ref(30), pred(30);
    int correct = 0;
    for (size_t i = 0; i < ref.size(); ++i) {
      ref[i] = rand.Int(0, 2);
      pred[i] = rand.Int(0, 2);
      if (ref[i] == pred[i]) ++correct;
    }
    expect(std::abs(AscF1Micro(ref, pred, 3) - 100.0 * correct / 30.0) <= 1e-12,
           "scene random confusion equals accuracy");
  }

  // Merge associativity/commutativity over 1000 random partitions.
  bsk_test::TestRand rand(9);
  const size_t segments = 40, classes = 5;
  BinaryMatrix ref(segments, classes), pred(segments, classes);
  for (auto& v : ref.data) v = rand.Uniform() < 0.4 ? 1 : 0;
  for (auto& v : pred.data) v = rand.Uniform() < 0.4 ? 1 : 0;
  const auto whole = SedScores(ref, pred);

  for (int trial = 0; trial < 1000; ++trial) {
    std::vector<size_t> cuts = {0, segments};
    for (int i = rand.Int(0, 4); i > 0; --i) cuts.push_back(rand.Int(0, segments));
    std::sort(cuts.begin(), cuts.end());
    std::vector<SegmentScores> parts;
    for (size_t i = 0; i + 1 < cuts.size(); ++i) {
      if (cuts[i] == cuts[i + 1]) continue;
      BinaryMatrix r(cuts[i + 1] - cuts[i], classes), p(cuts[i + 1] - cuts[i], classes);
      for (size_t s = cuts[i]; s < cuts[i + 1]; ++s) {
        for (size_t c = 0; c < classes; ++c) {
          r.at(s - cuts[i], c) = ref.at(s, c);
          p.at(s - cuts[i], c) = pred.at(s, c);
        }
      }
      parts.push_back(SedScores(r, p));
    }
    std::vector<size_t> order(parts.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = i;
    for (size_t i = order.size(); i > 1; --i) {
      std::swap(order[i - 1], order[rand.Int(0, static_cast<int>(i) - 1)]);
    }
    SegmentScores merged;
    for (size_t i : order) merged.Merge(parts[i]);
    if (merged.n_ref != whole.n_ref || merged.subs != whole.subs ||
        merged.dels != whole.dels || merged.ins != whole.ins ||
        merged.tp != whole.tp || merged.fp != whole.fp || merged.fn != whole.fn) {
      expect(false, "partition merge mismatch");
      break;
    }
  }

  *detail = failures == 0 ? "hand cases exact; 1000 partition merges stable"
                          : std::to_string(failures) + " checks failed";
  return failures == 0;
}

// ---------------------------------------------------------------------------
// 8. End-to-end overfit

struct OverfitResult {
  int sed_criterion_epoch = -1;   // first epoch with SED F1 >= 90
  int both_criteria_epoch = -1;   // first epoch with SED >= 90 and ASC == 100
  double final_sed_f1 = 0.0;
  double final_asc_f1 = 0.0;
};

std::vector<TrainClip> BuildClips(const std::string& manifest_path,
                                  const ModelConfig& model, FeatureSet set) {
  const auto entries = ParseManifestFile(manifest_path);
  std::vector<ClipMeta> metas;
  for (const auto& e : entries) {
    ClipMeta meta;
    meta.audio_path = ResolveManifestPath(manifest_path, e.audio_path);
    meta.scene_label = e.scene_label;
    meta.events =
        ParseAnnotationFile(ResolveManifestPath(manifest_path, e.annotation_path));
    metas.push_back(std::move(meta));
  }
  const LabelVocabulary vocab = LabelVocabulary::Build(metas);

  std::vector<TrainClip> clips;
  for (const auto& meta : metas) {
    const AudioClip audio = ReadWav(meta.audio_path);
    FeatureConfig fc;
    fc.stft = StftConfig::ForSampleRate(audio.sample_rate);
    fc.mel_bands = model.mel_bands;
    const FeatureTensor features = StackFeatures(set, audio, fc);
    TargetSet targets;
    const double hop_s =
        static_cast<double>(fc.stft.hop_length) / audio.sample_rate;
    targets.sed = EncodeSedTargets(meta.events, hop_s, features.frames, vocab);
    targets.scene = EncodeSceneTarget(meta.scene_label, vocab);
    for (auto& window : SplitIntoClips(features, targets, model.frames)) {
      TrainClip clip;
      clip.features = FromFeatureTensor(window.features);
      clip.sed = window.targets.sed;
      clip.scene_index = vocab.SceneIndex(meta.scene_label);
      clip.valid_frames = window.valid_frames;
      clips.push_back(std::move(clip));
    }
  }
  return clips;
}

OverfitResult RunOverfit(const std::string& manifest, FeatureSet set, uint64_t seed,
                         int max_epochs, double hop_seconds) {
  const ModelConfig model = MicroModelConfig();
  const auto clips = BuildClips(manifest, model, set);

  MtlNetwork net(model, TaskMode::kMtl, FeatureSetChannels(set));
  Rng rng(seed);
  net.InitParams(&rng);

  OverfitResult result;
  const double granularity = 0.04;

  TrainOptions options;
  options.epochs = max_epochs;
  options.seed = seed;
  options.epoch_callback = [&](int epoch, const EpochLoss&) {
    SegmentScores sed_scores;
    std::vector<int> scene_ref, scene_pred;
    for (const auto& clip : clips) {
      const Prediction pred = Predict(&net, clip.features, 0.5);
      BinaryMatrix ref(clip.valid_frames, clip.sed.cols);
      BinaryMatrix hyp(clip.valid_frames, clip.sed.cols);
      for (int t = 0; t < clip.valid_frames; ++t) {
        for (size_t c = 0; c < clip.sed.cols; ++c) {
          ref.at(t, c) = clip.sed.at(t, c);
          hyp.at(t, c) = pred.sed.at(t, c);
        }
      }
      sed_scores.Merge(SedScores(Segmentize(ref, hop_seconds, granularity),
                                 Segmentize(hyp, hop_seconds, granularity)));
      scene_ref.push_back(clip.scene_index);
      scene_pred.push_back(pred.scene_index);
    }
    result.final_sed_f1 = sed_scores.F1Percent();
    result.final_asc_f1 = AscF1Micro(scene_ref, scene_pred, model.asc_classes);
    if (result.sed_criterion_epoch < 0 && result.final_sed_f1 >= 90.0) {
      result.sed_criterion_epoch = epoch;
    }
    if (result.both_criteria_epoch < 0 && result.final_sed_f1 >= 90.0 &&
        result.final_asc_f1 == 100.0) {
      result.both_criteria_epoch = epoch;
    }
    // Stop once both targets are met.
    return result.both_criteria_epoch < 0;
  };
  Train(&net, clips, options);
  return result;
}

bool CheckOverfit(std::string* detail) {
  const auto dir = fs::temp_directory_path() / "bsk_acceptance_overfit";
  fs::remove_all(dir);
  const MicroCorpus corpus = MakeMicroCorpus(dir.string(), 7);
  const double hop_seconds = 320.0 / kMicroSampleRate;
  const uint64_t seed = 9;

  const OverfitResult sincos =
      RunOverfit(corpus.manifest_path, FeatureSet::kMelSinCos, seed, 200, hop_seconds);
  const OverfitResult mel1ch =
      RunOverfit(corpus.manifest_path, FeatureSet::kMel1ch, seed, 200, hop_seconds);
  fs::remove_all(dir);

  char buf[240];
  std::snprintf(buf, sizeof buf,
                "sincos: SED>=90 at epoch %d, both at %d (F1 %.1f/ASC %.1f); "
                "mel1ch: SED>=90 at epoch %d",
                sincos.sed_criterion_epoch, sincos.both_criteria_epoch,
                sincos.final_sed_f1, sincos.final_asc_f1,
                mel1ch.sed_criterion_epoch);
  *detail = buf;

  if (sincos.both_criteria_epoch < 0) return false;
  if (mel1ch.sed_criterion_epoch < 0) return false;
  return sincos.sed_criterion_epoch <= mel1ch.sed_criterion_epoch;
}

// ---------------------------------------------------------------------------
// 9. Determinism

bool CheckDeterminism(std::string* detail) {
  const auto base = fs::temp_directory_path() / "bsk_acceptance_determinism";
  fs::remove_all(base);

  auto run = [&](const std::string& tag) {
    const fs::path dir = base / tag;
    MakeMicroCorpus((dir / "corpus").string(), 11);
    RunConfig config;
    config.feature_set = FeatureSet::kMelGcc;
    config.mode = TaskMode::kMtl;
    config.seed = 11;
    config.epochs = 6;
    config.granularity_seconds = 1.0;
    config.model = MicroModelConfig();
    config.paths.manifest = (dir / "corpus" / "manifest.tsv").string();
    config.paths.feature_dir = (dir / "features").string();
    config.paths.checkpoint = (dir / "model.bmk").string();
    config.paths.report = (dir / "metrics.json").string();
    config.paths.train_log = (dir / "train.log.json").string();
    CmdExtract(config);
    CmdTrain(config);
    CmdEvaluate(config);
    return dir;
  };

  const fs::path a = run("a");
  const fs::path b = run("b");

  bool ok = true;
  std::string first_diff;
  for (int i = 0; i < kMicroClipCount && ok; ++i) {
    char name[32];
    std::snprintf(name, sizeof name, "clip_%05d.bft", i);
    if (ReadFileBytes((a / "features" / name).string()) !=
        ReadFileBytes((b / "features" / name).string())) {
      ok = false;
      first_diff = name;
    }
  }
  if (ok && ReadFileBytes((a / "model.bmk").string()) !=
                ReadFileBytes((b / "model.bmk").string())) {
    ok = false;
    first_diff = "checkpoint";
  }
  if (ok && ReadFileText((a / "metrics.json").string()) !=
                ReadFileText((b / "metrics.json").string())) {
    ok = false;
    first_diff = "metrics report";
  }
  if (ok && ReadFileText((a / "train.log.json").string()) !=
                ReadFileText((b / "train.log.json").string())) {
    ok = false;
    first_diff = "training log";
  }
  fs::remove_all(base);
  *detail = ok ? "feature files, checkpoint, report, and log byte-identical"
               : "difference in " + first_diff;
  return ok;
}

}  // namespace

int main() {
  std::vector<Criterion> criteria = {
      {1, "dsp-oracle-equivalence", CheckDspOracles, 10.0},
      {2, "feature-formula-suite", CheckFeatureFormulas, 30.0},
      {3, "gcc-phat-delay-recovery", CheckGccDelayRecovery, 30.0},
      {4, "gradient-check", CheckGradients, 120.0},
      {5, "shape-contract", CheckShapeContract, 0.0},
      {6, "loss-weighting", CheckLossWeighting, 0.0},
      {7, "metric-hand-cases", CheckMetricHandCases, 0.0},
      {8, "end-to-end-overfit", CheckOverfit, 300.0},
      {9, "determinism", CheckDeterminism, 0.0},
  };

  int failures = 0;
  for (auto& criterion : criteria) {
    const auto start = std::chrono::steady_clock::now();
    std::string d;
    bool ok = false;
    try {
      ok = criterion.run(&d);
    } catch (const std::exception& e) {
      ok = false;
      d = std::string("exception: ") + e.what();
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    if (criterion.budget_seconds > 0.0 && seconds > criterion.budget_seconds) {
      ok = false;
      d += " [over the " + std::to_string(criterion.budget_seconds) + " s budget]";
    }
    std::printf("%s  %d %-26s (%6.2f s)  %s\n", ok ? "PASS" : "FAIL", criterion.id,
                criterion.name.c_str(), seconds, d.c_str());
    std::fflush(stdout);
    if (!ok) ++failures;
  }
  return failures;
}
