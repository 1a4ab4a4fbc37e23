#include "nertcam/dataset.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <ostream>
#include <random>
#include <set>
#include <stdexcept>

namespace nertcam {

namespace {

// std::uniform_int_distribution is implementation-defined; this keeps
// generated files identical across standard libraries.
std::size_t draw(std::mt19937_64& rng, std::size_t bound) {
  const std::uint64_t limit = std::mt19937_64::max() - std::mt19937_64::max() % bound;
  std::uint64_t x = rng();
  while (x >= limit) x = rng();
  return static_cast<std::size_t>(x % bound);
}

void shuffle(std::vector<std::size_t>& v, std::mt19937_64& rng) {
  for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[draw(rng, i)]);
}

void check(const DatasetParams& p) {
  if (p.classes == 0 || p.rows == 0 || p.cols == 0 || p.samples_per_class == 0) {
    throw std::invalid_argument("classes, grid dimensions and samples must be positive");
  }
  if (p.feature_pool == 0 || p.feature_pool > p.feature_bits) {
    throw std::invalid_argument("feature pool must be in [1, feature width]");
  }
  if (p.samples_per_class > p.feature_pool) {
    throw std::invalid_argument("samples per class cannot exceed the feature pool");
  }
  // feature_pool^locations distinct maps exist; saturate once it is clearly enough.
  const std::size_t needed = p.classes * p.samples_per_class;
  std::size_t available = 1;
  for (std::size_t l = 0; l < p.rows * p.cols && available < needed; ++l) available *= p.feature_pool;
  if (available < needed) {
    throw std::invalid_argument("feature pool too small for " + std::to_string(needed) +
                                " distinct object maps");
  }
}

}  // namespace

Dataset generate_dataset(const DatasetParams& params) {
  check(params);
  Dataset d;
  d.params = params;
  std::mt19937_64 rng(params.seed);
  const std::size_t n_loc = d.locations();

  std::set<std::vector<std::size_t>> seen;
  d.maps.assign(params.classes, {});
  for (std::size_t c = 0; c < params.classes; ++c) {
    // Per location, a distinct feature for every sample of this class.
    std::vector<std::vector<std::size_t>> per_location(n_loc);
    for (;;) {
      for (auto& slot : per_location) {
        std::vector<std::size_t> pool(params.feature_pool);
        std::iota(pool.begin(), pool.end(), std::size_t{0});
        for (std::size_t s = 0; s < params.samples_per_class; ++s) {
          std::swap(pool[s], pool[s + draw(rng, pool.size() - s)]);
        }
        slot.assign(pool.begin(),
                    pool.begin() + static_cast<std::ptrdiff_t>(params.samples_per_class));
      }
      std::vector<std::vector<std::size_t>> samples(params.samples_per_class,
                                                    std::vector<std::size_t>(n_loc));
      for (std::size_t l = 0; l < n_loc; ++l) {
        for (std::size_t s = 0; s < params.samples_per_class; ++s) samples[s][l] = per_location[l][s];
      }
      const bool fresh = std::none_of(samples.begin(), samples.end(),
                                      [&](const auto& m) { return seen.contains(m); });
      if (fresh) {
        for (const auto& m : samples) seen.insert(m);
        d.maps[c] = std::move(samples);
        break;
      }
    }
  }
  return d;
}

std::vector<TraceRecord> store_trace(const Dataset& dataset) {
  std::vector<TraceRecord> out;
  out.reserve(dataset.entry_count());
  for (std::size_t c = 0; c < dataset.maps.size(); ++c) {
    for (const auto& map : dataset.maps[c]) {
      for (std::size_t l = 0; l < map.size(); ++l) {
        TraceRecord r;
        r.op = CommandKind::Store;
        r.feature = map[l];
        r.location = l;
        r.class_index = c;
        out.push_back(r);
      }
    }
  }
  return out;
}

std::vector<TraceRecord> sensation_stream(const Dataset& dataset, std::size_t class_index,
                                          std::size_t sample,
                                          const std::vector<std::size_t>& order) {
  const auto& map = dataset.maps.at(class_index).at(sample);
  std::vector<TraceRecord> out;
  out.reserve(order.size());
  for (const std::size_t l : order) {
    TraceRecord r;
    r.op = CommandKind::Infer;
    r.feature = map.at(l);
    r.location = l;
    out.push_back(r);
  }
  return out;
}

std::vector<TraceRecord> infer_trace(const Dataset& dataset) {
  std::mt19937_64 rng(dataset.params.seed ^ 0x9e3779b97f4a7c15ULL);
  std::vector<TraceRecord> out;
  std::vector<std::size_t> order(dataset.locations());
  for (std::size_t c = 0; c < dataset.maps.size(); ++c) {
    for (std::size_t s = 0; s < dataset.maps[c].size(); ++s) {
      std::iota(order.begin(), order.end(), std::size_t{0});
      if (dataset.params.order == SensationOrder::Random) shuffle(order, rng);
      out.push_back(TraceRecord{CommandKind::Reset, {}, {}, {}, {}, {}});
      const auto stream = sensation_stream(dataset, c, s, order);
      out.insert(out.end(), stream.begin(), stream.end());
    }
  }
  return out;
}

NertcamConfig dataset_config(const Dataset& dataset, std::size_t capacity) {
  NertcamConfig c;
  c.layout = {dataset.params.feature_bits, dataset.locations(), dataset.params.classes};
  c.capacity = capacity;
  c.padding_mode = PaddingMode::grid(dataset.params.rows, dataset.params.cols);
  return c;
}

void write_dataset(std::ostream& out, const Dataset& dataset) {
  for (std::size_t c = 0; c < dataset.maps.size(); ++c) {
    for (std::size_t s = 0; s < dataset.maps[c].size(); ++s) {
      nlohmann::json j;
      j["class"] = c;
      j["sample"] = s;
      j["features"] = dataset.maps[c][s];
      out << j.dump() << '\n';
    }
  }
}

void write_dataset_files(const std::string& dir, const Dataset& dataset, std::size_t capacity) {
  namespace fs = std::filesystem;
  fs::create_directories(dir);
  const fs::path root(dir);

  auto open = [&](const char* name) {
    std::ofstream f(root / name);
    if (!f) throw std::runtime_error("cannot write " + (root / name).string());
    return f;
  };
  {
    auto f = open("config.json");
    f << to_json(dataset_config(dataset, capacity)).dump(2) << '\n';
  }
  {
    auto f = open("dataset.jsonl");
    write_dataset(f, dataset);
  }
  {
    auto f = open("store.jsonl");
    write_trace(f, store_trace(dataset));
  }
  {
    auto f = open("infer.jsonl");
    write_trace(f, infer_trace(dataset));
  }
}

}  // namespace nertcam
