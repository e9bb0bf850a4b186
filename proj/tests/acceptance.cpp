// Acceptance suite: one criterion per run_criterion call, one PASS/FAIL
// line each, nonzero exit when anything fails. Tolerances and budgets are
// pinned in code next to each check.

#include "pqcreg/circuits.hpp"
#include "pqcreg/data.hpp"
#include "pqcreg/errors.hpp"
#include "pqcreg/evaluation.hpp"
#include "pqcreg/rng.hpp"
#include "pqcreg/statevector.hpp"
#include "pqcreg/training.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

using namespace pqcreg;

namespace {

constexpr double kPi = 3.14159265358979323846;

struct Failure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void require(bool ok, const std::string &what) {
    if (!ok) {
        throw Failure(what);
    }
}

template <typename T>
std::string str(const T &value) {
    std::ostringstream os;
    os << value;
    return os.str();
}

int g_failures = 0;

void run_criterion(const char *name, double budget_seconds,
                   const std::function<void()> &body) {
    const auto start = std::chrono::steady_clock::now();
    std::string error;
    try {
        body();
    } catch (const std::exception &e) {
        error = e.what();
    }
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    if (error.empty() && elapsed > budget_seconds) {
        error = "exceeded the " + str(budget_seconds) + " s budget (" +
                str(elapsed) + " s)";
    }
    if (error.empty()) {
        std::printf("[PASS] %-28s (%.1f s)\n", name, elapsed);
    } else {
        ++g_failures;
        std::printf("[FAIL] %-28s (%.1f s): %s\n", name, elapsed,
                    error.c_str());
    }
    std::fflush(stdout);
}

// Shared helpers ------------------------------------------------------

std::vector<double> random_vector(std::size_t count, std::uint64_t seed,
                                  double lo, double hi) {
    const rng::KeyedStream stream(seed, rng::Stream::ThetaInit);
    std::vector<double> out(count);
    for (std::size_t i = 0; i < count; ++i) {
        out[i] = stream.uniform(i, lo, hi);
    }
    return out;
}

GateOp random_gate(const rng::KeyedStream &stream, std::uint64_t &ctr,
                   int n_qubits) {
    static const std::vector<GateKind> kinds = {
        GateKind::RY,   GateKind::RZ, GateKind::RX,  GateKind::H,
        GateKind::X,    GateKind::CNOT, GateKind::CZ, GateKind::CRX,
        GateKind::CRZ,  GateKind::ZZ};
    const auto kind = kinds[stream.u64(ctr++) % kinds.size()];
    const int q0 = static_cast<int>(stream.u64(ctr++) %
                                    static_cast<std::uint64_t>(n_qubits));
    int q1 = q0;
    while (gate_arity(kind) == 2 && q1 == q0) {
        q1 = static_cast<int>(stream.u64(ctr++) %
                              static_cast<std::uint64_t>(n_qubits));
    }
    GateOp op;
    op.kind = kind;
    op.qubit0 = q0;
    op.qubit1 = q1;
    op.angle = gate_has_angle(kind) ? stream.uniform(ctr++, -kPi, kPi) : 0.0;
    return op;
}

CircuitTemplate ry_model() {
    CircuitTemplate tmpl;
    tmpl.n_qubits = 1;
    tmpl.n_features = 1;
    tmpl.total_params = 1;
    Slot fx;
    fx.kind = GateKind::RY;
    fx.binding = Slot::Binding::Feature;
    fx.transform = FeatureTransform::Raw;
    tmpl.slots.push_back(fx);
    Slot pt;
    pt.kind = GateKind::RY;
    pt.binding = Slot::Binding::Param;
    pt.param = 0;
    tmpl.slots.push_back(pt);
    return tmpl;
}

double wrap_distance(double theta, double target) {
    double d = std::fmod(theta - target, 2 * kPi);
    if (d > kPi) {
        d -= 2 * kPi;
    }
    if (d < -kPi) {
        d += 2 * kPi;
    }
    return std::abs(d);
}

double std_of(const std::vector<double> &v) {
    double mean = 0.0;
    for (const double x : v) {
        mean += x;
    }
    mean /= static_cast<double>(v.size());
    double acc = 0.0;
    for (const double x : v) {
        acc += (x - mean) * (x - mean);
    }
    return std::sqrt(acc / static_cast<double>(v.size()));
}

/// The 98-circuit reduction: every encoder crossed with the seven
/// shallowest ansatz families (the all-to-all and double-rotation
/// layouts are dropped on depth grounds).
const std::vector<std::string> &reduced_ansatz_list() {
    static const std::vector<std::string> names = {
        "Modified-Pauli-CRZ", "Modified-Pauli-CRX", "Efficient-CRZ",
        "Efficient-CRX",      "HWE-CNOT",           "HWE-CZ",
        "Hadamard"};
    return names;
}

// Criteria -------------------------------------------------------------

void criterion_oracle_equivalence() {
    // Every (encoder, ansatz) pair at n=3, k=v=1, five random draws:
    // fast-path <Z0> vs dense-oracle <Z0> within 1e-10.
    std::uint64_t seed = 1;
    for (const auto &enc : encoder_names()) {
        for (const auto &ans : ansatz_names()) {
            CircuitSpec spec;
            spec.n_qubits = 3;
            spec.encoder = EncoderSpec::parse(enc);
            spec.ansatz = AnsatzSpec::parse(ans);
            const auto tmpl = assemble_pqc(spec);
            for (int draw = 0; draw < 5; ++draw) {
                const auto theta = random_vector(
                    static_cast<std::size_t>(tmpl.total_params), seed++,
                    -kPi, kPi);
                const auto x = random_vector(3, seed++, -1.0, 1.0);
                const double fast = evaluate(tmpl, theta, x);
                const auto state =
                    oracle_apply(3, tmpl.bind(theta, x));
                const double dense = expectation_z0(state);
                require(std::abs(fast - dense) < 1e-10,
                        enc + "_" + ans + ": fast " + str(fast) +
                            " vs dense " + str(dense));
            }
        }
    }
}

void criterion_unitarity_and_norm() {
    const rng::KeyedStream stream(77, rng::Stream::ThetaInit);
    std::uint64_t ctr = 0;
    // Unitarity defect of every gate matrix at random angles; the
    // DenseUnitary constructor enforces 1e-10.
    for (const auto kind :
         {GateKind::RY, GateKind::RZ, GateKind::RX, GateKind::H, GateKind::X,
          GateKind::CNOT, GateKind::CZ, GateKind::CRX, GateKind::CRZ,
          GateKind::ZZ}) {
        for (int rep = 0; rep < 25; ++rep) {
            (void)dense_gate_matrix(kind,
                                    stream.uniform(ctr++, -3 * kPi, 3 * kPi));
        }
    }
    // Norm drift after 1000 random gates at n=10.
    auto state = new_zero_state(10);
    for (int g = 0; g < 1000; ++g) {
        apply_gate(state, random_gate(stream, ctr, 10));
    }
    const double drift = std::abs(state.norm_sq() - 1.0);
    require(drift <= 1e-12, "norm drift " + str(drift) + " > 1e-12");
}

void criterion_gradient_cross_check() {
    // Parameter-shift vs central differences (h = 1e-4) within 1e-6 per
    // component on 20 random n=4 circuits.
    const rng::KeyedStream stream(11, rng::Stream::ThetaInit);
    std::uint64_t ctr = 0;
    const auto ds = synth_dataset(SynthKind::Cosine, 12, 4, 5);
    for (int rep = 0; rep < 20; ++rep) {
        CircuitSpec spec;
        spec.n_qubits = 4;
        spec.encoder = EncoderSpec::parse(
            encoder_names()[stream.u64(ctr++) % encoder_names().size()]);
        spec.ansatz = AnsatzSpec::parse(
            ansatz_names()[stream.u64(ctr++) % ansatz_names().size()]);
        const auto tmpl = assemble_pqc(spec);
        const auto theta =
            random_initial_theta(tmpl.total_params, stream.u64(ctr++));
        const auto ps = parameter_shift_gradient(tmpl, theta, ds, 2);
        const auto fd = finite_difference_gradient(tmpl, theta, ds, 1e-4, 2);
        for (std::size_t j = 0; j < ps.size(); ++j) {
            require(std::abs(ps[j] - fd[j]) < 1e-6,
                    spec.encoder.name + "_" + spec.ansatz.name +
                        " component " + str(j) + ": |" + str(ps[j]) + " - " +
                        str(fd[j]) + "| >= 1e-6");
        }
    }
}

void criterion_realizable_recovery() {
    // RY-encoder/RY-ansatz fit of y = cos(x + 0.3): train R^2 >= 0.99 and
    // offset within 0.05 (mod 2pi) in <= 300 iterations, five consecutive
    // seeds.
    const auto tmpl = ry_model();
    const auto ds = synth_dataset(SynthKind::Cosine, 50, 1, 7);
    for (std::uint64_t seed = 42; seed <= 46; ++seed) {
        SpsaConfig config;
        config.iterations = 300;
        config.seed = seed;
        const auto record = spsa_minimize(tmpl, ds, config);
        const double offset = wrap_distance(record.final_theta[0], 0.3);
        require(offset < 0.05, "seed " + str(seed) + ": offset " +
                                   str(offset) + " >= 0.05");
        const auto yhat = predict_batch(tmpl, record.final_theta, ds);
        const double fit = r2(ds.y, yhat);
        require(fit >= 0.99,
                "seed " + str(seed) + ": train R^2 " + str(fit) + " < 0.99");
        require(record.loss_history.back().second < 1e-3,
                "seed " + str(seed) + ": final loss " +
                    str(record.loss_history.back().second) + " >= 1e-3");
    }
}

void criterion_protocol_shape() {
    const auto raw = synth_dataset(SynthKind::Cosine, 50, 3, 3);
    PipelineOptions options;
    options.split_seed = 1;
    const auto prepared = prepare_data(raw, options);
    TrainSetup setup;
    setup.n_qubits = 3;
    setup.spsa.iterations = 2;
    setup.spsa.seed = 5;

    const auto full =
        grid_sweep(encoder_names(), ansatz_names(), prepared, setup, 2);
    require(full.cells.size() == 168,
            "full grid has " + str(full.cells.size()) + " rows, wanted 168");
    for (const auto &cell : full.cells) {
        require(cell.ok, cell.encoder + "_" + cell.ansatz + " failed: " +
                             cell.error);
    }

    const auto reduced = grid_sweep(encoder_names(), reduced_ansatz_list(),
                                    prepared, setup, 2);
    require(reduced.cells.size() == 98,
            "reduced grid has " + str(reduced.cells.size()) +
                " rows, wanted 98");

    require(default_learning_curve_ratios() ==
                std::vector<double>{0.1, 0.3, 0.5, 0.7, 0.8},
            "default learning-curve ratios are not {0.1,0.3,0.5,0.7,0.8}");
    const auto curve = learning_curve(
        raw, options, default_learning_curve_ratios(),
        EncoderSpec::parse("A1"), AnsatzSpec::parse("HWE-CNOT"), setup, 1.0,
        2);
    for (const auto &point : curve.points) {
        require(point.test_indices == curve.points[0].test_indices,
                "test partition changed across ratios");
    }
}

void criterion_directional_findings() {
    // (a) pure-noise targets: a trained shallow PQC regresses toward the
    // mean, std(yhat) < std(y).
    {
        const auto raw = synth_dataset(SynthKind::WideGaussian, 200, 5, 19);
        PipelineOptions options;
        options.split_seed = 7;
        const auto prepared = prepare_data(raw, options);
        TrainSetup setup;
        setup.n_qubits = 5;
        setup.spsa.iterations = 200;
        setup.spsa.seed = 23;
        const auto run =
            run_pqc(EncoderSpec::parse("M-M-CZ"), AnsatzSpec::parse("HWE-CNOT"),
                    prepared, setup, 23, 2);
        const double pred = std_of(run.yhat_test);
        const double ref = std_of(prepared.y_test_orig);
        require(pred < ref, "std(yhat) " + str(pred) + " !< std(y) " +
                                str(ref));
    }
    // (b) exactly-linear data: the ridge baseline beats the PQC on test
    // R^2.
    {
        const auto raw = synth_dataset(SynthKind::Linear, 200, 5, 29);
        PipelineOptions options;
        options.split_seed = 7;
        const auto prepared = prepare_data(raw, options);
        TrainSetup setup;
        setup.n_qubits = 5;
        setup.spsa.iterations = 200;
        setup.spsa.seed = 31;
        const auto run =
            run_pqc(EncoderSpec::parse("A1"), AnsatzSpec::parse("HWE-CNOT"),
                    prepared, setup, 31, 2);
        Dataset ridge_train = prepared.train_scaled;
        ridge_train.y = prepared.y_train_orig;
        Dataset ridge_test = prepared.test_scaled;
        ridge_test.y = prepared.y_test_orig;
        const auto ridge = ridge_baseline(ridge_train, ridge_test, 1.0);
        require(ridge.r2_test > run.metrics.r2_test,
                "ridge test R^2 " + str(ridge.r2_test) +
                    " !> PQC test R^2 " + str(run.metrics.r2_test));
    }
}

void criterion_depth_scan() {
    const auto raw = synth_dataset(SynthKind::Cosine, 150, 5, 37);
    PipelineOptions options;
    options.split_seed = 11;
    const auto prepared = prepare_data(raw, options);
    TrainSetup setup;
    setup.n_qubits = 5;
    setup.spsa.iterations = 100;
    setup.spsa.seed = 41;

    const std::vector<int> depths = {1, 3, 5};
    const auto scan =
        depth_scan(prepared, EncoderSpec::parse("A2"),
                   AnsatzSpec::parse("HWE-CNOT"), depths, depths, setup, 2);
    require(scan.cells.size() == 9, "depth scan produced " +
                                        str(scan.cells.size()) +
                                        " cells, wanted 9");
    const int per_layer = ansatz_param_count(AnsatzKind::HweCnot, 5);
    for (const auto &cell : scan.cells) {
        require(cell.ok, "cell k=" + str(cell.rud) + " v=" +
                             str(cell.ansatz_layers) + " failed: " +
                             cell.error);
        require(cell.total_params == static_cast<long>(cell.rud) *
                                         cell.ansatz_layers * per_layer,
                "parameter count is not k*v*P");
    }
    // Monotone non-decreasing along each depth axis.
    for (const auto &a : scan.cells) {
        for (const auto &b : scan.cells) {
            if (a.rud <= b.rud && a.ansatz_layers <= b.ansatz_layers) {
                require(a.total_params <= b.total_params,
                        "parameter count not monotone along the depth axes");
            }
        }
    }
}

void criterion_performance() {
    // Single n=16 evaluation of an A1_HWE-style circuit under 100 ms.
    CircuitSpec spec;
    spec.n_qubits = 16;
    spec.encoder = EncoderSpec::parse("A1");
    spec.ansatz = AnsatzSpec::parse("HWE-CNOT");
    const auto tmpl = assemble_pqc(spec);
    const auto theta = random_vector(
        static_cast<std::size_t>(tmpl.total_params), 3, -kPi, kPi);
    const auto x = random_vector(16, 4, -1.0, 1.0);
    (void)evaluate(tmpl, theta, x); // warm the allocator
    double best = 1e9;
    for (int rep = 0; rep < 3; ++rep) {
        const auto start = std::chrono::steady_clock::now();
        const double value = evaluate(tmpl, theta, x);
        const double ms = std::chrono::duration<double, std::milli>(
                              std::chrono::steady_clock::now() - start)
                              .count();
        best = std::min(best, ms);
        require(std::abs(value) <= 1.0 + 1e-12, "evaluation out of range");
    }
    require(best < 100.0,
            "n=16 evaluation took " + str(best) + " ms, budget 100 ms");

    // 2x2 grid smoke run with 5 iterations under 60 s.
    const auto raw = synth_dataset(SynthKind::Cosine, 60, 5, 43);
    PipelineOptions options;
    options.split_seed = 13;
    const auto prepared = prepare_data(raw, options);
    TrainSetup setup;
    setup.n_qubits = 5;
    setup.spsa.iterations = 5;
    setup.spsa.seed = 47;
    const auto start = std::chrono::steady_clock::now();
    const auto grid = grid_sweep({"A1", "A2"}, {"HWE-CNOT", "HWE-CZ"},
                                 prepared, setup, 2);
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    require(grid.cells.size() == 4, "smoke grid is not 2x2");
    for (const auto &cell : grid.cells) {
        require(cell.ok, "smoke grid cell failed: " + cell.error);
    }
    require(seconds < 60.0,
            "2x2 smoke grid took " + str(seconds) + " s, budget 60 s");
}

void criterion_metric_unit_suite() {
    // The spec's by-hand examples, asserted exactly, plus the scaler /
    // PCA / split invariants at their stated tolerances.

    // Statevector examples.
    {
        const auto z1 = new_zero_state(1);
        require(z1.amplitudes() ==
                    std::vector<Complex>{{1.0, 0.0}, {0.0, 0.0}},
                "|0> amplitudes wrong");
        const auto z3 = new_zero_state(3);
        require(z3.amplitudes()[0] == Complex{1.0, 0.0} && z3.size() == 8,
                "|000> amplitudes wrong");
        bool threw = false;
        try {
            (void)new_zero_state(0);
        } catch (const Error &) {
            threw = true;
        }
        require(threw, "n=0 did not raise a capacity error");

        auto s = new_zero_state(1);
        apply_gate(s, GateOp::single(GateKind::RY, 0, kPi));
        require(std::abs(s.amplitudes()[1] - Complex{1.0, 0.0}) < 1e-15,
                "RY(pi)|0> != |1>");

        auto c = new_zero_state(2);
        apply_gate(c, GateOp::single(GateKind::X, 0));
        apply_gate(c, GateOp::two(GateKind::CNOT, 0, 1));
        require(std::abs(c.amplitudes()[3] - Complex{1.0, 0.0}) < 1e-15,
                "CNOT truth table violated");

        auto e = new_zero_state(4);
        require(expectation_z0(e) == 1.0, "<Z0> of |0...0> != 1");
        apply_gate(e, GateOp::single(GateKind::X, 0));
        require(expectation_z0(e) == -1.0, "<Z0> after X != -1");
        auto h = new_zero_state(4);
        apply_gate(h, GateOp::single(GateKind::H, 0));
        require(std::abs(expectation_z0(h)) < 1e-12, "<Z0> after H != 0");

        const auto bell = oracle_apply(2, {GateOp::single(GateKind::H, 0),
                                           GateOp::two(GateKind::CNOT, 0, 1)});
        require(std::abs(bell.amplitudes()[0].real() - 0.7071) < 1e-4 &&
                    std::abs(bell.amplitudes()[3].real() - 0.7071) < 1e-4,
                "Bell state amplitudes wrong");

        for (const auto kind : {GateKind::RY, GateKind::RZ, GateKind::ZZ}) {
            auto i0 = new_zero_state(2);
            apply_gate(i0, GateOp::single(GateKind::H, 0));
            auto ref = i0;
            if (gate_arity(kind) == 2) {
                apply_gate(i0, GateOp::two(kind, 0, 1, 0.0));
            } else {
                apply_gate(i0, GateOp::single(kind, 0, 0.0));
            }
            for (std::size_t i = 0; i < i0.size(); ++i) {
                require(std::abs(i0.amplitudes()[i] - ref.amplitudes()[i]) <
                            1e-14,
                        "zero-angle gate is not the identity within 1e-14");
            }
        }
    }

    // Encoder examples.
    {
        const auto a1 = build_encoder(EncoderSpec::parse("A1"), 5);
        const std::vector<double> zeros(5, 0.0);
        require(std::abs(evaluate(a1, {}, zeros) - 1.0) < 1e-12,
                "A1 at x=0 is not <Z0> = 1");
        const auto m = build_encoder(EncoderSpec::parse("M"), 1);
        const std::vector<double> one = {1.0};
        require(std::abs(evaluate(m, {}, one)) < 1e-12,
                "M at x=1 is not <Z0> = 0");
        const auto iqp = build_encoder(EncoderSpec::parse("IQP"), 3);
        const std::vector<double> zeros3(3, 0.0);
        require(std::abs(evaluate(iqp, {}, zeros3)) < 1e-12,
                "IQP at x=0 is not <Z0> = 0");
    }

    // Circuit composition and evaluation examples.
    {
        CircuitSpec spec;
        spec.n_qubits = 5;
        spec.encoder = EncoderSpec::parse("A1");
        spec.ansatz = AnsatzSpec::parse("HWE-CNOT");
        require(assemble_pqc(spec).total_params ==
                    ansatz_param_count(AnsatzKind::HweCnot, 5),
                "k=1,v=1 parameter count wrong");
        spec.rud = 3;
        spec.ansatz_layers = 5;
        require(assemble_pqc(spec).total_params ==
                    15 * ansatz_param_count(AnsatzKind::HweCnot, 5),
                "k=3,v=5 parameter count wrong");

        const auto tmpl = ry_model();
        const std::vector<double> theta = {0.3};
        const std::vector<double> x = {0.5};
        require(std::abs(evaluate(tmpl, theta, x) - std::cos(0.8)) < 1e-12,
                "RY composition example is not cos(0.8)");
    }

    // Loss and metric examples.
    {
        require(mse_loss(std::vector<double>{1.0, -1.0},
                         std::vector<double>{0.0, 0.0}) == 1.0,
                "mse example 1 wrong");
        require(std::abs(mse_loss(std::vector<double>{0.5},
                                  std::vector<double>{0.1}) -
                         0.16) < 1e-15,
                "mse example 2 wrong");
        const std::vector<double> y = {0.0, 1.0, 2.0};
        require(r2(y, y) == 1.0, "r2 of exact predictions != 1");
        require(std::abs(r2(y, std::vector<double>{1.0, 1.0, 1.0})) < 1e-15,
                "r2 of mean predictor != 0");
        require(std::abs(r2(y, std::vector<double>{2.0, 1.0, 0.0}) + 3.0) <
                    1e-15,
                "r2 anti-correlated example != -3");
        require(mae(std::vector<double>{0.0, 2.0},
                    std::vector<double>{1.0, 1.0}) == 1.0,
                "mae example wrong");
        require(mae(std::vector<double>{5.0}, std::vector<double>{2.0}) ==
                    3.0,
                "mae single pair wrong");
    }

    // Gradient oracle examples.
    {
        CircuitTemplate tmpl;
        tmpl.n_qubits = 1;
        tmpl.n_features = 1;
        tmpl.total_params = 1;
        Slot pt;
        pt.kind = GateKind::RY;
        pt.binding = Slot::Binding::Param;
        pt.param = 0;
        tmpl.slots.push_back(pt);
        Dataset ds;
        ds.n_rows = 1;
        ds.n_cols = 1;
        ds.x = {0.0};
        ds.y = {1.0};
        ds.feature_names = {"f1"};
        const std::vector<double> theta = {kPi / 2};
        const auto grad = parameter_shift_gradient(tmpl, theta, ds);
        require(std::abs(grad[0] - 2.0) < 1e-12,
                "parameter-shift analytic example != 2.0");
        const std::vector<double> zero = {0.0};
        const auto fd = finite_difference_gradient(tmpl, zero, ds);
        require(std::abs(fd[0]) < 1e-7, "FD at even-function origin != 0");
    }

    // Scaler examples and invariants.
    {
        Dataset ds;
        ds.n_rows = 3;
        ds.n_cols = 1;
        ds.x = {10.0, 20.0, 30.0};
        ds.y = {7.0, 7.0, 7.0};
        ds.feature_names = {"f1"};
        const auto scaler = MinMaxScaler::fit(ds);
        const auto applied = scaler.apply(ds);
        require(applied.data.x == std::vector<double>{-1.0, 0.0, 1.0},
                "scaler affine example wrong");
        require(applied.data.y == std::vector<double>{0.0, 0.0, 0.0},
                "constant-column rule wrong");

        const auto noisy = synth_dataset(SynthKind::Linear, 40, 4, 3);
        const auto s2 = MinMaxScaler::fit(noisy);
        const auto a2 = s2.apply(noisy);
        for (const double v : a2.data.x) {
            require(v >= -1.0 && v <= 1.0, "fit data escaped [-1, 1]");
        }
        const auto back = s2.invert(a2.data);
        for (std::size_t i = 0; i < noisy.x.size(); ++i) {
            require(std::abs(back.x[i] - noisy.x[i]) < 1e-12,
                    "scaler round trip exceeded 1e-12");
        }
    }

    // PCA examples and invariants.
    {
        Dataset ds;
        ds.n_rows = 12;
        ds.n_cols = 2;
        ds.feature_names = {"f1", "f2"};
        const rng::KeyedStream stream(5, rng::Stream::SynthFeatures);
        for (std::size_t i = 0; i < 12; ++i) {
            const double v = stream.uniform(i, -2.0, 2.0);
            ds.x.push_back(v);
            ds.x.push_back(2.0 * v);
            ds.y.push_back(0.0);
        }
        const auto model = fit_pca(ds, 2);
        require(model.explained_variance[0] /
                        (model.explained_variance[0] +
                         std::abs(model.explained_variance[1])) >
                    1.0 - 1e-10,
                "rank-1 data: first component variance share < 1 - 1e-10");
        for (std::size_t p = 0; p < 2; ++p) {
            for (std::size_t q = 0; q < 2; ++q) {
                double dot = 0.0;
                for (std::size_t j = 0; j < 2; ++j) {
                    dot += model.components[p * 2 + j] *
                           model.components[q * 2 + j];
                }
                require(std::abs(dot - (p == q ? 1.0 : 0.0)) < 1e-10,
                        "PCA components not orthonormal within 1e-10");
            }
        }
    }

    // Split examples and invariants.
    {
        const auto ds = synth_dataset(SynthKind::Linear, 100, 2, 9);
        const auto parts = split(ds, SplitSpec{0.8, 5});
        require(parts.test.n_rows == 20 && parts.train.n_rows == 80,
                "N=100 split sizes wrong");
        const auto again = split(ds, SplitSpec{0.1, 5});
        require(again.test_indices == parts.test_indices,
                "test partition varies with train ratio");
    }

    // Ridge examples.
    {
        const auto ds = synth_dataset(SynthKind::Linear, 100, 3, 13);
        const auto parts = split(ds, SplitSpec{0.8, 3});
        const auto fit = ridge_baseline(parts.train, parts.test, 1e-8);
        require(fit.r2_train >= 0.999,
                "ridge on exact linear data has train R^2 < 0.999");
        const auto shrunk = ridge_baseline(parts.train, parts.test, 1e12);
        require(std::abs(shrunk.r2_train) < 1e-3,
                "infinite-lambda ridge does not shrink to the mean");
    }
}

} // namespace

int main() {
    std::printf("acceptance suite\n");
    run_criterion("oracle-equivalence", 120.0, criterion_oracle_equivalence);
    run_criterion("unitarity-and-norm-drift", 10.0,
                  criterion_unitarity_and_norm);
    run_criterion("gradient-cross-check", 60.0,
                  criterion_gradient_cross_check);
    run_criterion("realizable-model-recovery", 30.0,
                  criterion_realizable_recovery);
    run_criterion("protocol-shape", 600.0, criterion_protocol_shape);
    run_criterion("directional-findings", 600.0,
                  criterion_directional_findings);
    run_criterion("depth-scan-harness", 900.0, criterion_depth_scan);
    run_criterion("performance", 120.0, criterion_performance);
    run_criterion("metric-unit-suite", 10.0, criterion_metric_unit_suite);
    if (g_failures != 0) {
        std::printf("%d criterion(s) failed\n", g_failures);
        return 1;
    }
    std::printf("all criteria passed\n");
    return 0;
}
