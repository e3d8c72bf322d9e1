#include "sweep.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace mzm::cli {

namespace {

double to_double(const std::string& s) {
    size_t pos = 0;
    double v = 0;
    try {
        v = std::stod(s, &pos);
    } catch (const std::exception&) {
        throw std::invalid_argument("not a number: '" + s + "'");
    }
    if (pos != s.size()) throw std::invalid_argument("not a number: '" + s + "'");
    return v;
}

}  // namespace

std::vector<double> parse_range(const std::string& text) {
    std::vector<double> out;
    if (text.find(':') != std::string::npos) {
        std::vector<std::string> parts;
        std::stringstream ss(text);
        std::string item;
        while (std::getline(ss, item, ':')) parts.push_back(item);
        if (parts.size() != 3) throw std::invalid_argument("range must be start:stop:step, got '" + text + "'");
        const double a = to_double(parts[0]), b = to_double(parts[1]), h = to_double(parts[2]);
        if (!(h > 0)) throw std::invalid_argument("range step must be positive");
        if (b >= a) {
            const long n = static_cast<long>(std::floor((b - a) / h + 1e-9));
            for (long i = 0; i <= n; ++i) out.push_back(a + h * static_cast<double>(i));
        }
    } else {
        std::stringstream ss(text);
        std::string item;
        while (std::getline(ss, item, ','))
            if (!item.empty()) out.push_back(to_double(item));
    }
    if (out.empty()) throw std::invalid_argument("empty parameter range '" + text + "'");
    return out;
}

std::string fmt_num(double x) {
    char buf[64];
    if (x == 0.0) x = 0.0;  // drop negative zero
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

int worker_count() {
    if (const char* env = std::getenv("MZM_WORKERS")) {
        const int n = std::atoi(env);
        if (n > 0) return n;
    }
    const unsigned hc = std::thread::hardware_concurrency();
    return hc > 0 ? static_cast<int>(hc) : 1;
}

void parallel_for(int n, int workers, const std::function<void(int)>& task) {
    workers = std::max(1, std::min(workers, n));
    if (workers == 1) {
        for (int i = 0; i < n; ++i) task(i);
        return;
    }
    std::atomic<int> next{0};
    std::exception_ptr err;
    std::mutex m;
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w)
        pool.emplace_back([&] {
            for (int i = next++; i < n; i = next++) {
                try {
                    task(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lk(m);
                    if (!err) err = std::current_exception();
                }
            }
        });
    for (auto& t : pool) t.join();
    if (err) std::rethrow_exception(err);
}

}  // namespace mzm::cli
