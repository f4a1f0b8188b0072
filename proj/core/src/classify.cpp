#include "pgequiv/classify.hpp"

#include <algorithm>
#include <atomic>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <thread>
#include <unordered_map>

namespace pgequiv {

Algorithm parse_algorithm(const std::string& name) {
  if (name == "ceimpg") return Algorithm::kCeimpg;
  if (name == "cesimpg") return Algorithm::kCesimpg;
  if (name == "auto") return Algorithm::kAuto;
  throw std::invalid_argument("unknown algorithm '" + name + "' (expected ceimpg, cesimpg or auto)");
}

const char* to_string(Algorithm algo) {
  switch (algo) {
    case Algorithm::kCeimpg: return "ceimpg";
    case Algorithm::kCesimpg: return "cesimpg";
    case Algorithm::kAuto: return "auto";
  }
  return "?";
}

namespace {

// Runs task(i) for i in [0, count) on up to `jobs` threads.
void parallel_for(std::size_t count, unsigned jobs, const std::function<void(std::size_t)>& task) {
  if (jobs == 0) jobs = std::max(1u, std::thread::hardware_concurrency());
  jobs = static_cast<unsigned>(std::min<std::size_t>(jobs, count));
  if (jobs <= 1) {
    for (std::size_t i = 0; i < count; ++i) task(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> workers;
  for (unsigned w = 0; w < jobs; ++w)
    workers.emplace_back([&] {
      for (std::size_t i; (i = next.fetch_add(1)) < count;) task(i);
    });
  for (auto& t : workers) t.join();
}

template <typename T>
struct Outcome {
  std::optional<T> value;
  std::string error;
};

template <typename T>
Outcome<T> capture(const std::function<T()>& fn) {
  try {
    return {fn(), {}};
  } catch (const std::exception& e) {
    return {std::nullopt, e.what()};
  }
}

void check_uniform(const std::vector<GeneratorMatrix>& codes) {
  for (std::size_t i = 1; i < codes.size(); ++i) {
    const auto& a = codes.front();
    const auto& b = codes[i];
    if (!(a.field() == b.field()) || a.k() != b.k() || a.n() != b.n())
      throw std::invalid_argument("code " + std::to_string(i + 1) + " has parameters different from code 1");
  }
}

Classification by_ceimpg(const std::vector<GeneratorMatrix>& codes, const ClassifyOptions& options) {
  std::vector<Outcome<std::string>> keys(codes.size());
  parallel_for(codes.size(), options.jobs, [&](std::size_t i) {
    keys[i] = capture<std::string>([&] { return ceimpg_key(codes[i], options.equiv); });
  });

  Classification out;
  std::unordered_map<std::string, std::size_t> class_of;
  for (std::size_t i = 0; i < codes.size(); ++i) {
    if (!keys[i].value) {
      out.failures.push_back({i, keys[i].error});
      continue;
    }
    auto [it, fresh] = class_of.emplace(*keys[i].value, out.classes.size());
    if (fresh) out.classes.push_back({i, {}, *keys[i].value});
    out.classes[it->second].members.push_back(i);
  }
  return out;
}

Classification by_cesimpg(const std::vector<GeneratorMatrix>& codes, const ClassifyOptions& options) {
  EquivOptions eo = options.equiv;
  eo.allow_ceimpg_fallback = options.algorithm == Algorithm::kAuto;

  std::vector<Outcome<ShortenedCode>> prepared(codes.size());
  parallel_for(codes.size(), options.jobs, [&](std::size_t i) {
    prepared[i] = capture<ShortenedCode>([&] { return prepare_shortened(codes[i], eo); });
  });

  Classification out;
  std::vector<std::pair<std::string, std::vector<std::size_t>>> buckets;
  std::unordered_map<std::string, std::size_t> bucket_of;
  for (std::size_t i = 0; i < codes.size(); ++i) {
    if (!prepared[i].value) {
      out.failures.push_back({i, prepared[i].error});
      continue;
    }
    auto key = prepared[i].value->key();
    auto [it, fresh] = bucket_of.emplace(key, buckets.size());
    if (fresh) buckets.emplace_back(std::move(key), std::vector<std::size_t>{});
    buckets[it->second].second.push_back(i);
  }

  struct BucketResult {
    std::vector<CodeClass> classes;
    std::vector<ItemFailure> failures;
  };
  std::vector<BucketResult> results(buckets.size());
  parallel_for(buckets.size(), options.jobs, [&](std::size_t b) {
    auto& res = results[b];
    for (auto i : buckets[b].second) {
      const ShortenedCode& item = *prepared[i].value;
      std::optional<std::size_t> home;
      try {
        for (std::size_t c = 0; c < res.classes.size() && !home; ++c)
          if (cesimpg_equiv(item, *prepared[res.classes[c].representative].value, eo).equivalent()) home = c;
      } catch (const std::exception& e) {
        res.failures.push_back({i, e.what()});
        continue;
      }
      if (!home) {
        home = res.classes.size();
        res.classes.push_back({i, {}, buckets[b].first + "#" + std::to_string(res.classes.size())});
      }
      res.classes[*home].members.push_back(i);
    }
  });

  for (auto& r : results) {
    for (auto& c : r.classes) out.classes.push_back(std::move(c));
    for (auto& f : r.failures) out.failures.push_back(std::move(f));
  }
  std::sort(out.classes.begin(), out.classes.end(),
            [](const CodeClass& a, const CodeClass& b) { return a.representative < b.representative; });
  std::sort(out.failures.begin(), out.failures.end(),
            [](const ItemFailure& a, const ItemFailure& b) { return a.index < b.index; });
  return out;
}

}  // namespace

Classification classify(const std::vector<GeneratorMatrix>& codes, const ClassifyOptions& options) {
  check_uniform(codes);
  if (options.algorithm == Algorithm::kCeimpg) return by_ceimpg(codes, options);
  return by_cesimpg(codes, options);
}

}  // namespace pgequiv
