#include "support.hpp"

#include "sharpkit/kernel_io.hpp"
#include "sharpkit/presets.hpp"

#include <doctest.h>
#include <json.hpp>

#include <filesystem>

using namespace sharpkit;

namespace {

KernelFile preset_file(const char* name, std::size_t index = 0)
{
    const auto* p = find_preset(name);
    REQUIRE(p != nullptr);
    KernelFile f;
    f.spec = p->kernels[index].spec;
    f.kernel = synthesize(f.spec);
    f.preset_note = p->note(index);
    return f;
}

} // namespace

TEST_SUITE("kernel_io")
{
    TEST_CASE("kernel JSON round-trips exactly")
    {
        const auto f = preset_file("natural-1");
        const auto back = kernel_from_json(kernel_to_json(f));
        CHECK(back == f);

        const auto dir = std::filesystem::temp_directory_path() / "sharpkit_kernel_io";
        std::filesystem::create_directories(dir);
        save_kernel(f, dir / "k.json");
        CHECK(load_kernel(dir / "k.json") == f);
        std::filesystem::remove_all(dir);
    }

    TEST_CASE("malformed kernels are rejected")
    {
        const auto f = preset_file("natural-1");
        auto j = nlohmann::json::parse(kernel_to_json(f));

        auto asym = j;
        asym["taps"][0] = asym["taps"][0].get<double>() + 1e-3;
        CHECK(code_of([&] { kernel_from_json(asym.dump()); }) == Errc::parse);

        auto even = j;
        even["taps"].erase(even["taps"].size() - 1);
        CHECK(code_of([&] { kernel_from_json(even.dump()); }) == Errc::parse);

        auto odd_moment = j;
        odd_moment["moment"] = 3;
        CHECK(code_of([&] { kernel_from_json(odd_moment.dump()); }) == Errc::parse);

        CHECK(code_of([] { kernel_from_json("{not json"); }) == Errc::parse);
        CHECK(code_of([] { load_kernel("/nonexistent/dir/k.json"); }) == Errc::io);
    }

    TEST_CASE("combination files")
    {
        ComboFile c{{preset_file("natural-2", 0), preset_file("natural-2", 1)},
                    {0.25, 0.75},
                    LogisticParams{{1.5, -2.0, 0.3, 0.01, 4.0}},
                    0.125};
        const auto text = combo_to_json(c);
        CHECK(is_combo_json(text));
        CHECK_FALSE(is_combo_json(kernel_to_json(c.kernels[0])));
        const auto back = combo_from_json(text);
        CHECK(back.kernels[0] == c.kernels[0]);
        CHECK(back.kernels[1] == c.kernels[1]);
        CHECK(back.weights == c.weights);
        CHECK(back.logistic == c.logistic);
        CHECK(back.rmse == c.rmse);

        auto j = nlohmann::json::parse(text);
        j["kernels"].erase(1);
        CHECK(code_of([&] { combo_from_json(j.dump()); }) == Errc::parse);
    }
}
