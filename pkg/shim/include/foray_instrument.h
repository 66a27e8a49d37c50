// foray_instrument.h -- checkpoint/access instrumentation macros.
//
// Annotating a program with these macros makes it emit a foray trace
// (see the analyzer's README for the text format) while it runs:
//
//   FORAY_DECLARE_LOOP(1, 12, 13, 17);      // once, before any event
//   FORAY_LOOP_BEGIN(12);
//   while (cond) {
//     FORAY_BODY_BEGIN(13);
//     ...
//     FORAY_ACCESS(0x4002a0, ptr, write);   // ref id, address, read|write
//     ...
//     FORAY_BODY_END(17);
//   }
//
// The trace path comes from the FORAY_TRACE_PATH environment variable
// (default "./out.ftrace").  Loop declarations are buffered and written
// as the file header when the first event arrives (or at exit, for a run
// with no events); events stream directly and are flushed at exit.
//
// The runtime is deliberately minimal: single-threaded programs only,
// and the reference id is any stable per-site integer standing in for
// the instruction address.

#ifndef FORAY_INSTRUMENT_H_
#define FORAY_INSTRUMENT_H_

#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <string>
#include <type_traits>
#include <vector>

namespace foray {

enum class access_kind { read, write };

// Tokens so FORAY_ACCESS can take a bare read / write argument.
constexpr access_kind access_kind_token_read = access_kind::read;
constexpr access_kind access_kind_token_write = access_kind::write;

namespace detail {

inline std::uintptr_t to_address(const volatile void* p) {
    return reinterpret_cast<std::uintptr_t>(p);
}

template <typename T,
          typename std::enable_if<std::is_integral<T>::value, int>::type = 0>
inline std::uintptr_t to_address(T v) {
    return static_cast<std::uintptr_t>(v);
}

// Core writer; the macros drive a process-wide instance, tests may
// instantiate their own with an explicit path.
class trace_writer {
public:
    explicit trace_writer(std::string path) : path_(std::move(path)) {}

    trace_writer(const trace_writer&) = delete;
    trace_writer& operator=(const trace_writer&) = delete;

    ~trace_writer() { close(); }

    void declare_loop(unsigned long loop_id, unsigned long begin_id,
                      unsigned long body_id, unsigned long end_id) {
        ensure_open();
        if (events_started_) {
            std::fprintf(stderr,
                         "foray shim: FORAY_DECLARE_LOOP(%lu, ...) after the "
                         "first event; declarations must all come first\n",
                         loop_id);
            std::abort();
        }
        char line[128];
        std::snprintf(line, sizeof line, "Loop: %lu begin=%lu body=%lu end=%lu\n",
                      loop_id, begin_id, body_id, end_id);
        header_.push_back(line);
    }

    void checkpoint(unsigned long id) {
        begin_events();
        std::fprintf(out_, "Checkpoint: %lu\n", id);
    }

    void access(unsigned long long ref_id, std::uintptr_t addr, access_kind kind) {
        begin_events();
        std::fprintf(out_, "Instr: %llx addr: %llx %s\n", ref_id,
                     static_cast<unsigned long long>(addr),
                     kind == access_kind::write ? "wr" : "rd");
    }

    // Flush everything and release the file; a run that never emitted an
    // event still gets its declaration header.
    void close() {
        if (out_ && !events_started_) write_header();
        if (out_) {
            std::fclose(out_);
            out_ = nullptr;
        }
    }

private:
    void ensure_open() {
        if (out_) return;
        out_ = std::fopen(path_.c_str(), "w");
        if (!out_) {
            std::fprintf(stderr, "foray shim: cannot open trace path '%s'\n",
                         path_.c_str());
            std::abort();
        }
    }

    void write_header() {
        for (const std::string& line : header_) std::fputs(line.c_str(), out_);
        header_.clear();
    }

    void begin_events() {
        ensure_open();
        if (!events_started_) {
            write_header();
            events_started_ = true;
        }
    }

    std::string path_;
    std::FILE* out_ = nullptr;
    bool events_started_ = false;
    std::vector<std::string> header_;
};

inline trace_writer& runtime() {
    static trace_writer writer([] {
        const char* path = std::getenv("FORAY_TRACE_PATH");
        return std::string(path ? path : "./out.ftrace");
    }());
    return writer;
}

}  // namespace detail
}  // namespace foray

#define FORAY_DECLARE_LOOP(loop_id, begin_id, body_id, end_id) \
    ::foray::detail::runtime().declare_loop((loop_id), (begin_id), (body_id), (end_id))

#define FORAY_LOOP_BEGIN(id) ::foray::detail::runtime().checkpoint(id)
#define FORAY_BODY_BEGIN(id) ::foray::detail::runtime().checkpoint(id)
#define FORAY_BODY_END(id) ::foray::detail::runtime().checkpoint(id)

#define FORAY_ACCESS(ref_id, address_expression, kind)                 \
    ::foray::detail::runtime().access(                                 \
        (ref_id), ::foray::detail::to_address(address_expression),     \
        ::foray::access_kind_token_##kind)

#endif  // FORAY_INSTRUMENT_H_
