#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <string>
#include <vector>

#include "foray_instrument.h"

namespace {

std::string temp_trace_path(const char* tag) {
    return std::string("build/test_") + tag + ".ftrace";
}

std::vector<std::string> read_lines(const std::string& path) {
    std::ifstream in(path);
    REQUIRE(in.good());
    std::vector<std::string> lines;
    std::string line;
    while (std::getline(in, line)) lines.push_back(line);
    return lines;
}

}  // namespace

TEST_CASE("declarations buffered and written as the header") {
    const std::string path = temp_trace_path("header");
    {
        foray::detail::trace_writer w(path);
        w.declare_loop(1, 12, 13, 17);
        w.declare_loop(2, 15, 16, 14);
        w.checkpoint(12);
        w.checkpoint(13);
        w.access(0x4002a0, 0x7fff5934, foray::access_kind::write);
        w.close();
    }
    auto lines = read_lines(path);
    REQUIRE(lines.size() == 5);
    CHECK(lines[0] == "Loop: 1 begin=12 body=13 end=17");
    CHECK(lines[1] == "Loop: 2 begin=15 body=16 end=14");
    CHECK(lines[2] == "Checkpoint: 12");
    CHECK(lines[3] == "Checkpoint: 13");
    CHECK(lines[4] == "Instr: 4002a0 addr: 7fff5934 wr");
}

TEST_CASE("zero events still produces a declarations-only trace") {
    const std::string path = temp_trace_path("decls_only");
    {
        foray::detail::trace_writer w(path);
        w.declare_loop(7, 70, 71, 72);
        w.close();
    }
    auto lines = read_lines(path);
    REQUIRE(lines.size() == 1);
    CHECK(lines[0] == "Loop: 7 begin=70 body=71 end=72");
}

TEST_CASE("read accesses carry the rd token, hex is lowercase") {
    const std::string path = temp_trace_path("read_kind");
    {
        foray::detail::trace_writer w(path);
        w.declare_loop(1, 10, 11, 12);
        w.access(0xABCDEF, 0xFF00, foray::access_kind::read);
        w.close();
    }
    auto lines = read_lines(path);
    REQUIRE(lines.size() == 2);
    CHECK(lines[1] == "Instr: abcdef addr: ff00 rd");
}

TEST_CASE("pointer and integral address expressions both record") {
    const std::string path = temp_trace_path("addr_kinds");
    int array[4] = {0, 0, 0, 0};
    {
        foray::detail::trace_writer w(path);
        w.declare_loop(1, 10, 11, 12);
        w.access(0x1, foray::detail::to_address(&array[2]), foray::access_kind::read);
        w.access(0x2, foray::detail::to_address(0x1234), foray::access_kind::write);
        w.close();
    }
    auto lines = read_lines(path);
    REQUIRE(lines.size() == 3);
    char expected[64];
    std::snprintf(expected, sizeof expected, "Instr: 1 addr: %llx rd",
                  static_cast<unsigned long long>(
                      reinterpret_cast<std::uintptr_t>(&array[2])));
    CHECK(lines[1] == expected);
    CHECK(lines[2] == "Instr: 2 addr: 1234 wr");
}

TEST_CASE("close is idempotent and reopens nothing") {
    const std::string path = temp_trace_path("close_twice");
    foray::detail::trace_writer w(path);
    w.declare_loop(1, 10, 11, 12);
    w.checkpoint(10);
    w.close();
    w.close();
    auto lines = read_lines(path);
    REQUIRE(lines.size() == 2);
}
