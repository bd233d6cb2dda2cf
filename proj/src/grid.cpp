#include "fermidiscord/grid.hpp"

#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <sstream>
#include <thread>

#include "fermidiscord/errors.hpp"

namespace fermidiscord {

namespace {

double parse_number(const std::string& text, const std::string& whole) {
  try {
    std::size_t used = 0;
    const double x = std::stod(text, &used);
    if (used != text.size() || !std::isfinite(x)) throw std::invalid_argument(text);
    return x;
  } catch (const std::exception&) {
    throw InvalidInput("invalid range '" + whole + "': bad number '" + text + "'");
  }
}

}  // namespace

GridRange GridRange::parse(const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ':')) parts.push_back(item);
  if (!text.empty() && text.back() == ':') parts.emplace_back();
  if (parts.size() == 1) return single(parse_number(parts[0], text));
  if (parts.size() != 3)
    throw InvalidInput("invalid range '" + text + "': expected start:stop:step");
  GridRange r{parse_number(parts[0], text), parse_number(parts[1], text),
              parse_number(parts[2], text)};
  r.values();
  return r;
}

std::vector<double> GridRange::values() const {
  if (!std::isfinite(start) || !std::isfinite(stop) || !std::isfinite(step))
    throw InvalidInput("range bounds must be finite");
  if (step <= 0.0) throw InvalidInput("range step must be positive");
  if (stop < start) throw InvalidInput("empty range");
  // Slack for stops like 0.3 = 3 * 0.1 that land just short in floating point.
  const auto count =
      static_cast<std::size_t>(std::floor((stop - start) / step + 1e-9)) + 1;
  std::vector<double> out;
  out.reserve(count);
  for (std::size_t k = 0; k < count; ++k)
    out.push_back(start + static_cast<double>(k) * step);
  return out;
}

void parallel_for(std::size_t count, int threads,
                  const std::function<void(std::size_t)>& body) {
  unsigned workers = threads > 0 ? static_cast<unsigned>(threads)
                                 : std::max(1u, std::thread::hardware_concurrency());
  if (workers > count) workers = static_cast<unsigned>(count);
  if (workers <= 1) {
    for (std::size_t k = 0; k < count; ++k) body(k);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t k = next++; k < count; k = next++) {
        try {
          body(k);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

}  // namespace fermidiscord
