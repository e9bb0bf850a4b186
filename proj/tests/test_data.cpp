#include <catch2/catch_amalgamated.hpp>

#include "pqcreg/data.hpp"
#include "pqcreg/errors.hpp"
#include "pqcreg/rng.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <set>
#include <string>

using namespace pqcreg;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() /
               ("pqcreg_data_" + std::to_string(::getpid()) + "_" +
                std::to_string(counter()++));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    static int &counter() {
        static int c = 0;
        return c;
    }
    [[nodiscard]] std::string file(const std::string &name) const {
        return (path / name).string();
    }
};

void write_file(const std::string &path, const std::string &content) {
    std::ofstream out(path);
    out << content;
}

Dataset random_dataset(std::size_t rows, std::size_t cols,
                       std::uint64_t seed) {
    const rng::KeyedStream stream(seed, rng::Stream::SynthFeatures);
    Dataset ds;
    ds.n_rows = rows;
    ds.n_cols = cols;
    ds.x.resize(rows * cols);
    ds.y.resize(rows);
    std::uint64_t ctr = 0;
    for (auto &v : ds.x) {
        v = stream.uniform(ctr++, -50.0, 50.0);
    }
    for (auto &v : ds.y) {
        v = stream.uniform(ctr++, -5.0, 5.0);
    }
    for (std::size_t j = 0; j < cols; ++j) {
        ds.feature_names.push_back("f" + std::to_string(j + 1));
    }
    return ds;
}

} // namespace

TEST_CASE("load_table basics", "[data]") {
    TempDir dir;
    SECTION("three rows, two features plus target") {
        write_file(dir.file("ok.csv"), "f1,f2,target\n"
                                       "1,2,3\n"
                                       "4,5,6\n"
                                       "7,8,9\n");
        const auto ds = load_table(dir.file("ok.csv"), "target");
        REQUIRE(ds.n_rows == 3);
        REQUIRE(ds.n_cols == 2);
        REQUIRE(ds.at(1, 1) == 5.0);
        REQUIRE(ds.y == std::vector<double>{3.0, 6.0, 9.0});
        REQUIRE(ds.feature_names == std::vector<std::string>{"f1", "f2"});
    }
    SECTION("target column can sit anywhere") {
        write_file(dir.file("mid.csv"), "a,target,b\n1,2,3\n");
        const auto ds = load_table(dir.file("mid.csv"), "target");
        REQUIRE(ds.n_cols == 2);
        REQUIRE(ds.y == std::vector<double>{2.0});
        REQUIRE(ds.at(0, 0) == 1.0);
        REQUIRE(ds.at(0, 1) == 3.0);
    }
    SECTION("NaN cell is a parse error naming the location") {
        write_file(dir.file("nan.csv"), "f1,target\n1,2\nNaN,4\n");
        REQUIRE_THROWS_MATCHES(
            load_table(dir.file("nan.csv"), "target"), Error,
            Catch::Matchers::MessageMatches(
                Catch::Matchers::ContainsSubstring("row 3") &&
                Catch::Matchers::ContainsSubstring("f1")));
    }
    SECTION("missing target column") {
        write_file(dir.file("miss.csv"), "f1,f2\n1,2\n");
        REQUIRE_THROWS_MATCHES(
            load_table(dir.file("miss.csv"), "target"), Error,
            Catch::Matchers::MessageMatches(
                Catch::Matchers::ContainsSubstring("target column")));
    }
    SECTION("empty file") {
        write_file(dir.file("empty.csv"), "");
        REQUIRE_THROWS_AS(load_table(dir.file("empty.csv"), "target"), Error);
    }
    SECTION("header only") {
        write_file(dir.file("header.csv"), "f1,target\n");
        REQUIRE_THROWS_AS(load_table(dir.file("header.csv"), "target"),
                          Error);
    }
    SECTION("ragged row") {
        write_file(dir.file("ragged.csv"), "f1,target\n1,2\n3\n");
        REQUIRE_THROWS_AS(load_table(dir.file("ragged.csv"), "target"),
                          Error);
    }
}

TEST_CASE("save/load round trip", "[data]") {
    TempDir dir;
    const auto original = random_dataset(25, 4, 3);
    save_table(original, dir.file("round.csv"), "y");
    const auto loaded = load_table(dir.file("round.csv"), "y");
    REQUIRE(loaded.n_rows == original.n_rows);
    REQUIRE(loaded.n_cols == original.n_cols);
    for (std::size_t i = 0; i < original.x.size(); ++i) {
        REQUIRE(loaded.x[i] == Catch::Approx(original.x[i]).margin(1e-12));
    }
    for (std::size_t i = 0; i < original.y.size(); ++i) {
        REQUIRE(loaded.y[i] == Catch::Approx(original.y[i]).margin(1e-12));
    }
}

TEST_CASE("min-max scaling", "[data]") {
    SECTION("column [10, 20, 30] maps to [-1, 0, 1]") {
        Dataset ds;
        ds.n_rows = 3;
        ds.n_cols = 1;
        ds.x = {10.0, 20.0, 30.0};
        ds.y = {10.0, 20.0, 30.0};
        ds.feature_names = {"f1"};
        const auto scaler = MinMaxScaler::fit(ds);
        const auto applied = scaler.apply(ds);
        REQUIRE(applied.data.x == std::vector<double>{-1.0, 0.0, 1.0});
        REQUIRE(applied.data.y == std::vector<double>{-1.0, 0.0, 1.0});
        REQUIRE(applied.clipped_features == 0);
        REQUIRE(applied.clipped_target == 0);
    }
    SECTION("constant column maps to zero") {
        Dataset ds;
        ds.n_rows = 3;
        ds.n_cols = 1;
        ds.x = {7.0, 7.0, 7.0};
        ds.y = {1.0, 2.0, 3.0};
        ds.feature_names = {"f1"};
        const auto applied = MinMaxScaler::fit(ds).apply(ds);
        REQUIRE(applied.data.x == std::vector<double>{0.0, 0.0, 0.0});
    }
    SECTION("invert(apply(M)) = M within 1e-12 on random data") {
        const auto ds = random_dataset(40, 5, 9);
        const auto scaler = MinMaxScaler::fit(ds);
        const auto applied = scaler.apply(ds);
        for (const double v : applied.data.x) {
            REQUIRE(v >= -1.0);
            REQUIRE(v <= 1.0);
        }
        const auto back = scaler.invert(applied.data);
        for (std::size_t i = 0; i < ds.x.size(); ++i) {
            REQUIRE(back.x[i] == Catch::Approx(ds.x[i]).margin(1e-12));
        }
        for (std::size_t i = 0; i < ds.y.size(); ++i) {
            REQUIRE(back.y[i] == Catch::Approx(ds.y[i]).margin(1e-12));
        }
    }
    SECTION("rows unseen at fit time are clipped and counted") {
        Dataset train;
        train.n_rows = 2;
        train.n_cols = 1;
        train.x = {0.0, 10.0};
        train.y = {0.0, 1.0};
        train.feature_names = {"f1"};
        const auto scaler = MinMaxScaler::fit(train);

        Dataset test = train;
        test.x = {-5.0, 15.0};
        test.y = {0.5, 2.0};
        const auto applied = scaler.apply(test);
        REQUIRE(applied.clipped_features == 2);
        REQUIRE(applied.clipped_target == 1);
        REQUIRE(applied.data.x == std::vector<double>{-1.0, 1.0});
    }
}

TEST_CASE("PCA by covariance eigendecomposition", "[data]") {
    SECTION("rank-1 data: one component captures all variance") {
        Dataset ds;
        ds.n_rows = 20;
        ds.n_cols = 2;
        ds.feature_names = {"f1", "f2"};
        const rng::KeyedStream stream(5, rng::Stream::SynthFeatures);
        for (std::size_t i = 0; i < 20; ++i) {
            const double v = stream.uniform(i, -3.0, 3.0);
            ds.x.push_back(v);
            ds.x.push_back(2.0 * v); // exactly dependent column
            ds.y.push_back(0.0);
        }
        const auto model = fit_pca(ds, 2);
        const double total = model.explained_variance[0] +
                             model.explained_variance[1];
        REQUIRE(model.explained_variance[0] / total ==
                Catch::Approx(1.0).margin(1e-10));
    }
    SECTION("d=1 gives component [1] and centered projection") {
        Dataset ds;
        ds.n_rows = 4;
        ds.n_cols = 1;
        ds.x = {1.0, 2.0, 3.0, 4.0};
        ds.y = {0, 0, 0, 0};
        ds.feature_names = {"f1"};
        const auto model = fit_pca(ds, 1);
        REQUIRE(model.components == std::vector<double>{1.0});
        const auto projected = apply_pca(model, ds);
        REQUIRE(projected.at(0, 0) == Catch::Approx(-1.5).margin(1e-12));
        REQUIRE(projected.at(3, 0) == Catch::Approx(1.5).margin(1e-12));
    }
    SECTION("known rank-3 data reconstructs within 1e-8") {
        // X = A (50x3) * B (3x8) has rank 3; r=3 PCA must be lossless.
        const std::size_t n = 50, d = 8, rank = 3;
        const rng::KeyedStream stream(13, rng::Stream::SynthFeatures);
        std::vector<double> a(n * rank), b(rank * d);
        std::uint64_t ctr = 0;
        for (auto &v : a) {
            v = stream.uniform(ctr++, -1.0, 1.0);
        }
        for (auto &v : b) {
            v = stream.uniform(ctr++, -1.0, 1.0);
        }
        Dataset ds;
        ds.n_rows = n;
        ds.n_cols = d;
        ds.x.assign(n * d, 0.0);
        ds.y.assign(n, 0.0);
        for (std::size_t j = 0; j < d; ++j) {
            ds.feature_names.push_back("f" + std::to_string(j));
        }
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t k = 0; k < rank; ++k) {
                for (std::size_t j = 0; j < d; ++j) {
                    ds.at(i, j) += a[i * rank + k] * b[k * d + j];
                }
            }
        }

        const auto model = fit_pca(ds, rank);
        const auto projected = apply_pca(model, ds);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < d; ++j) {
                double recon = model.mean[j];
                for (std::size_t k = 0; k < rank; ++k) {
                    recon += projected.at(i, k) *
                             model.components[k * d + j];
                }
                REQUIRE(recon == Catch::Approx(ds.at(i, j)).margin(1e-8));
            }
        }
    }
    SECTION("components are orthonormal, variances nonincreasing, projected "
            "train data has zero mean") {
        const auto ds = random_dataset(60, 6, 21);
        const auto model = fit_pca(ds, 4);
        for (std::size_t p = 0; p < model.r; ++p) {
            for (std::size_t q = 0; q < model.r; ++q) {
                double dot = 0.0;
                for (std::size_t j = 0; j < model.d; ++j) {
                    dot += model.components[p * model.d + j] *
                           model.components[q * model.d + j];
                }
                REQUIRE(dot ==
                        Catch::Approx(p == q ? 1.0 : 0.0).margin(1e-10));
            }
        }
        for (std::size_t k = 1; k < model.r; ++k) {
            REQUIRE(model.explained_variance[k] <=
                    model.explained_variance[k - 1] + 1e-12);
        }
        const auto projected = apply_pca(model, ds);
        for (std::size_t k = 0; k < model.r; ++k) {
            double mean = 0.0;
            for (std::size_t i = 0; i < projected.n_rows; ++i) {
                mean += projected.at(i, k);
            }
            mean /= static_cast<double>(projected.n_rows);
            REQUIRE(std::abs(mean) < 1e-10);
        }
    }
    SECTION("too many components is an error") {
        const auto ds = random_dataset(10, 3, 1);
        REQUIRE_THROWS_AS(fit_pca(ds, 4), Error);
    }
}

TEST_CASE("deterministic splitting", "[data]") {
    const auto ds = random_dataset(100, 3, 33);
    SECTION("N=100 at 0.8 gives 20 test and 80 train rows, disjoint") {
        const auto parts = split(ds, SplitSpec{0.8, 5});
        REQUIRE(parts.test.n_rows == 20);
        REQUIRE(parts.train.n_rows == 80);
        std::set<std::size_t> seen(parts.test_indices.begin(),
                                   parts.test_indices.end());
        for (const auto idx : parts.train_indices) {
            REQUIRE(!seen.count(idx));
            seen.insert(idx);
        }
        REQUIRE(seen.size() == 100);
    }
    SECTION("test partition is identical for every train ratio") {
        const auto small = split(ds, SplitSpec{0.1, 5});
        const auto large = split(ds, SplitSpec{0.5, 5});
        REQUIRE(small.test_indices == large.test_indices);
        // Nested training subsets: the 0.1 rows lead the 0.5 rows.
        REQUIRE(std::equal(small.train_indices.begin(),
                           small.train_indices.end(),
                           large.train_indices.begin()));
    }
    SECTION("same seed reproduces the same partition") {
        const auto a = split(ds, SplitSpec{0.4, 77});
        const auto b = split(ds, SplitSpec{0.4, 77});
        REQUIRE(a.train_indices == b.train_indices);
        REQUIRE(a.test_indices == b.test_indices);
        REQUIRE(a.train.x == b.train.x);
    }
    SECTION("index audit on random sizes: no repeats, all in range") {
        const rng::KeyedStream stream(2, rng::Stream::SplitPermutation);
        for (int rep = 0; rep < 10; ++rep) {
            const std::size_t n = 10 + stream.u64(rep) % 90;
            const auto d2 = random_dataset(n, 2, rep + 100);
            const auto parts = split(d2, SplitSpec{0.5, rep * 31u});
            std::set<std::size_t> all;
            for (const auto idx : parts.test_indices) {
                REQUIRE(idx < n);
                REQUIRE(all.insert(idx).second);
            }
            for (const auto idx : parts.train_indices) {
                REQUIRE(idx < n);
                REQUIRE(all.insert(idx).second);
            }
            REQUIRE(all.size() <= n);
        }
    }
    SECTION("ratio outside (0, 0.8] is rejected") {
        REQUIRE_THROWS_AS(split(ds, SplitSpec{0.9, 1}), Error);
        REQUIRE_THROWS_AS(split(ds, SplitSpec{0.0, 1}), Error);
    }
    SECTION("too few rows") {
        const auto tiny = random_dataset(3, 2, 8);
        REQUIRE_THROWS_AS(split(tiny, SplitSpec{0.5, 1}), Error);
    }
}

TEST_CASE("synthetic datasets", "[data]") {
    SECTION("cosine d=1 commits y = cos(x + 0.3)") {
        const auto ds = synth_dataset(SynthKind::Cosine, 50, 1, 7);
        REQUIRE(ds.n_rows == 50);
        for (std::size_t i = 0; i < ds.n_rows; ++i) {
            REQUIRE(ds.y[i] ==
                    Catch::Approx(std::cos(ds.at(i, 0) + 0.3)).margin(1e-15));
            REQUIRE(ds.at(i, 0) >= -1.0);
            REQUIRE(ds.at(i, 0) <= 1.0);
        }
    }
    SECTION("linear targets follow the committed weights") {
        const auto ds = synth_dataset(SynthKind::Linear, 30, 3, 11);
        for (std::size_t i = 0; i < ds.n_rows; ++i) {
            const double expect = 0.1 + 1.0 * ds.at(i, 0) +
                                  1.1 * ds.at(i, 1) + 1.2 * ds.at(i, 2);
            REQUIRE(ds.y[i] == Catch::Approx(expect).margin(1e-12));
        }
    }
    SECTION("wide-gaussian matches its moments roughly") {
        const auto ds = synth_dataset(SynthKind::WideGaussian, 4000, 2, 3);
        double mean = 0.0;
        for (const double v : ds.y) {
            mean += v;
        }
        mean /= static_cast<double>(ds.n_rows);
        double var = 0.0;
        for (const double v : ds.y) {
            var += (v - mean) * (v - mean);
        }
        var /= static_cast<double>(ds.n_rows);
        REQUIRE(mean == Catch::Approx(90.7).margin(2.0));
        REQUIRE(std::sqrt(var) == Catch::Approx(27.5).margin(2.0));
    }
    SECTION("fewer than 10 rows is rejected") {
        REQUIRE_THROWS_AS(synth_dataset(SynthKind::Cosine, 9, 1, 0), Error);
    }
    SECTION("kind names parse") {
        REQUIRE(synth_kind_from_string("cosine") == SynthKind::Cosine);
        REQUIRE(synth_kind_from_string("wide-gaussian") ==
                SynthKind::WideGaussian);
        REQUIRE_THROWS_AS(synth_kind_from_string("sine"), Error);
    }
}
