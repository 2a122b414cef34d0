// Copyright 2026 The riverdtn Authors
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

#include "riverdtn/payload.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>
#include <string>
#include <string_view>
#include <tuple>

#include "riverdtn/error.hpp"
#include "riverdtn/random.hpp"

namespace riverdtn::sim {

namespace {

constexpr std::array<std::string_view, 24> kPhrases = {
    "Lave as maos com agua e sabao antes das refeicoes. ",
    "A agua do rio deve ser fervida antes de beber. ",
    "Vacinacao contra febre amarela na unidade de saude. ",
    "Licao de matematica: fracoes e numeros decimais. ",
    "Wash your hands with clean water before every meal. ",
    "Boil river water for at least one minute before drinking. ",
    "The school boat leaves the pier at seven in the morning. ",
    "Chapter three: the water cycle and the Amazon basin. ",
    "Mosquito nets reduce the risk of malaria and dengue. ",
    "Reading exercise: write five sentences about your family. ",
    "A colheita do acai comeca no mes de agosto. ",
    "Use repelente ao entardecer e durante a noite. ",
    "The health agent visits the community every two weeks. ",
    "Practice multiplication tables from one to ten. ",
    "Guarde os alimentos em recipientes bem fechados. ",
    "History lesson: the rubber boom in the Amazon region. ",
    "Keep medicines away from children and from the sun. ",
    "Aula de portugues: verbos no passado e no futuro. ",
    "Fish caught near the village should be cleaned quickly. ",
    "Oral rehydration: one liter of water, sugar and salt. ",
    "Ciencias: as plantas produzem oxigenio pela fotossintese. ",
    "Registration for the adult literacy course is open. ",
    "Bring your vaccination card to the next health visit. ",
    "Geografia: os rios da regiao e suas comunidades. ",
};

// Random segment i iff the running share crosses an integer. Every payload
// holds exactly the requested share for any seed.
bool segment_is_random(std::size_t i, double fraction, double phase) {
  return std::floor((static_cast<double>(i) + 1.0) * fraction + phase) >
         std::floor(static_cast<double>(i) * fraction + phase);
}

constexpr std::size_t kCalibrationCap = 256 * 1024;

std::mutex g_calibration_mutex;
std::map<std::tuple<long long, std::size_t, int>, double> g_calibration_cache;

}  // namespace

std::vector<std::uint8_t> mix_payload(std::size_t size, double random_fraction,
                                      std::uint64_t seed) {
  Rng rng(seed);
  const double phase = rng.uniform01();
  std::vector<std::uint8_t> out;
  out.reserve(size);

  std::string_view phrase = kPhrases[rng.uniform_int(0, kPhrases.size() - 1)];
  std::size_t phrase_pos = 0;
  for (std::size_t seg = 0; out.size() < size; ++seg) {
    const std::size_t n = std::min(kPayloadSegment, size - out.size());
    if (segment_is_random(seg, random_fraction, phase)) {
      for (std::size_t i = 0; i < n; i += 8) {
        std::uint64_t word = rng.next();
        for (std::size_t k = 0; k < 8 && i + k < n; ++k, word >>= 8) {
          out.push_back(static_cast<std::uint8_t>(word));
        }
      }
    } else {
      for (std::size_t i = 0; i < n; ++i) {
        if (phrase_pos == phrase.size()) {
          phrase = kPhrases[rng.uniform_int(0, kPhrases.size() - 1)];
          phrase_pos = 0;
        }
        out.push_back(static_cast<std::uint8_t>(phrase[phrase_pos++]));
      }
    }
  }
  return out;
}

double deflate_ratio(std::span<const std::uint8_t> bytes, int level) {
  if (bytes.empty()) {
    return 0.0;
  }
  const auto deflated = compression::deflate_raw(bytes, level);
  return compression::CompressionReport::of(bytes.size(), deflated.size()).ratio;
}

double calibrate_random_fraction(double target_ratio, std::size_t size, int level) {
  const std::size_t sample = std::clamp<std::size_t>(size, kPayloadSegment, kCalibrationCap);
  const auto key = std::make_tuple(std::llround(target_ratio * 1e6), sample, level);
  {
    std::lock_guard lock(g_calibration_mutex);
    if (auto it = g_calibration_cache.find(key); it != g_calibration_cache.end()) {
      return it->second;
    }
  }

  constexpr std::uint64_t kCalibrationSeed = 0x5EEDCA11B7A7E5ULL;
  auto ratio_at = [&](double f) {
    return deflate_ratio(mix_payload(sample, f, kCalibrationSeed), level);
  };

  // Savings fall as the random share grows.
  double lo = 0.0;
  double hi = 1.0;
  double best = 0.0;
  double best_err = INFINITY;
  // Stop once the interval is narrower than half a segment of the sample.
  const double resolution =
      0.5 * static_cast<double>(kPayloadSegment) / static_cast<double>(sample);
  while (hi - lo > resolution) {
    const double mid = 0.5 * (lo + hi);
    const double r = ratio_at(mid);
    if (std::abs(r - target_ratio) < best_err) {
      best_err = std::abs(r - target_ratio);
      best = mid;
    }
    if (r > target_ratio) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  if (best_err > kRatioTolerance) {
    throw CalibrationFailed("no payload mix reaches deflate ratio " +
                            std::to_string(target_ratio) + " (closest miss " +
                            std::to_string(best_err) + ")");
  }

  std::lock_guard lock(g_calibration_mutex);
  g_calibration_cache.emplace(key, best);
  return best;
}

std::vector<std::uint8_t> synthesize_payload(double target_ratio, std::size_t size,
                                             std::uint64_t seed, int level) {
  if (size == 0) {
    throw std::invalid_argument("payload size must be positive");
  }
  return mix_payload(size, calibrate_random_fraction(target_ratio, size, level), seed);
}

}  // namespace riverdtn::sim
