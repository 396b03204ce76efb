#ifndef MULTFAM_SRC_PARALLEL_HPP
#define MULTFAM_SRC_PARALLEL_HPP

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace multfam::detail {

/// out[i] = fn(in[i]) on a small worker pool; results keep input order and
/// the first exception thrown by any worker is rethrown.
template <class In, class Fn>
auto parallel_map(const std::vector<In> &in, Fn &&fn) -> std::vector<decltype(fn(in.front()))>
{
    using Out = decltype(fn(in.front()));
    std::vector<Out> out(in.size());
    if (in.empty()) {
        return out;
    }
    const std::size_t workers =
        std::min<std::size_t>(in.size(), std::max(1u, std::min(8u, std::thread::hardware_concurrency())));
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto work = [&] {
        while (true) {
            const std::size_t i = next.fetch_add(1);
            if (i >= in.size()) {
                return;
            }
            try {
                out[i] = fn(in[i]);
            } catch (...) {
                std::lock_guard lock(error_mutex);
                if (!error) {
                    error = std::current_exception();
                }
                next = in.size();
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    for (std::size_t t = 1; t < workers; ++t) {
        pool.emplace_back(work);
    }
    work();
    for (auto &t : pool) {
        t.join();
    }
    if (error) {
        std::rethrow_exception(error);
    }
    return out;
}

} // namespace multfam::detail

#endif
