#include <unistd.h>

#include <cmath>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <string>
#include <vector>

#include "doctest.h"
#include "json.hpp"
#include "multinet.h"

namespace {

const std::string kFixtureDir = MULTINET_FIXTURE_DIR;

struct Cleanup {
    std::vector<std::string> paths;
    ~Cleanup() {
        for (const auto& p : paths) std::remove(p.c_str());
    }
};

std::string temp_path(const char* stem) {
    return (std::filesystem::temp_directory_path() /
            (std::string("multinet_capi_") + std::to_string(::getpid()) + "_" + stem))
        .string();
}

}  // namespace

TEST_CASE("version and status names are exposed") {
    CHECK(std::string(mn_version()) == "0.1.0");
    CHECK(std::string(mn_status_name(MN_OK)) == "ok");
    CHECK(std::string(mn_status_name(MN_ERR_PARSE)) == "parse error");
}

TEST_CASE("null arguments produce MN_ERR_INVALID_ARGUMENT with a message") {
    mn_layer* layer = nullptr;
    CHECK(mn_layer_read_edge_csv(nullptr, nullptr, &layer) == MN_ERR_INVALID_ARGUMENT);
    CHECK(std::strlen(mn_last_error()) > 0);
    CHECK(mn_hits_compute(nullptr, 1e-10, 100, nullptr) == MN_ERR_INVALID_ARGUMENT);
}

TEST_CASE("file and parse failures map to distinct status codes") {
    mn_layer* layer = nullptr;
    CHECK(mn_layer_read_edge_csv("/nonexistent/file.csv", nullptr, &layer) == MN_ERR_IO);

    const std::string bad = temp_path("bad.csv");
    Cleanup cleanup{{bad}};
    {
        FILE* f = std::fopen(bad.c_str(), "w");
        std::fputs("src,dst,weight\nA,B,zzz\n", f);
        std::fclose(f);
    }
    CHECK(mn_layer_read_edge_csv(bad.c_str(), nullptr, &layer) == MN_ERR_PARSE);
    CHECK(std::string(mn_last_error()).find("cannot parse") != std::string::npos);
}

TEST_CASE("dense layer round-trip: labels, weights, degrees") {
    const char* labels[] = {"a", "b", "c"};
    const double weights[] = {0, 1, 2,   // a -> b, a -> c
                              0, 0, 0,   //
                              0, 3, 0};  // c -> b
    mn_layer* layer = nullptr;
    REQUIRE(mn_layer_from_dense(labels, 3, weights, 1, "test", &layer) == MN_OK);
    CHECK(mn_layer_node_count(layer) == 3);
    CHECK(std::string(mn_layer_label(layer, 2)) == "c");
    CHECK(std::string(mn_layer_name(layer)) == "test");
    CHECK(mn_layer_directed(layer) == 1);

    double w = 0;
    CHECK(mn_layer_weight(layer, 0, 1, &w) == MN_OK);
    CHECK(w == 1.0);
    CHECK(mn_layer_weight(layer, 5, 0, &w) == MN_ERR_OUT_OF_RANGE);

    size_t deg = 0;
    CHECK(mn_layer_degree(layer, 0, MN_DEGREE_OUT, &deg) == MN_OK);
    CHECK(deg == 2);
    CHECK(mn_layer_degree(layer, 1, MN_DEGREE_IN, &deg) == MN_OK);
    CHECK(deg == 2);
    CHECK(mn_layer_degree(layer, 9, MN_DEGREE_IN, &deg) == MN_ERR_OUT_OF_RANGE);

    // zero diagonal invariant enforced through the C surface too
    const double loops[] = {1.0};
    const char* one[] = {"x"};
    mn_layer* bad = nullptr;
    CHECK(mn_layer_from_dense(one, 1, loops, 1, "bad", &bad) == MN_ERR_INVALID_ARGUMENT);

    mn_layer_free(layer);
}

TEST_CASE("hits through the C api reproduces the chain-graph scores") {
    const char* labels[] = {"p", "q", "r"};
    const double weights[] = {0, 1, 1,  //
                              0, 0, 1,  //
                              0, 0, 0};
    mn_layer* layer = nullptr;
    REQUIRE(mn_layer_from_dense(labels, 3, weights, 1, "chain", &layer) == MN_OK);
    mn_hits* hits = nullptr;
    REQUIRE(mn_hits_compute(layer, 1e-12, 5000, &hits) == MN_OK);
    CHECK(mn_hits_converged(hits) == 1);
    CHECK(mn_hits_gap_ok(hits) == 1);
    size_t n = 0;
    const double* hubs = mn_hits_hubs(hits, &n);
    REQUIRE(n == 3);
    CHECK(std::abs(hubs[0] - 0.85065) <= 5e-6);
    CHECK(std::abs(hubs[1] - 0.52573) <= 5e-6);
    const double* auths = mn_hits_authorities(hits, &n);
    CHECK(std::abs(auths[2] - 0.85065) <= 5e-6);
    mn_hits_free(hits);

    mn_centrality* cent = nullptr;
    CHECK(mn_eigencentrality_compute(layer, 1e-10, 1000, &cent) == MN_ERR_INVALID_ARGUMENT);
    mn_layer_free(layer);
}

TEST_CASE("assembly over the fixture exposes tensor, labels and report") {
    mn_layer* sh = nullptr;
    mn_layer* bd = nullptr;
    mn_layer* corr = nullptr;
    REQUIRE(mn_layer_load_shareholding((kFixtureDir + "/shareholding.csv").c_str(), nullptr, 0.02,
                                       &sh) == MN_OK);
    REQUIRE(mn_layer_load_board((kFixtureDir + "/board.csv").c_str(), nullptr, &bd) == MN_OK);
    REQUIRE(mn_layer_load_correlation((kFixtureDir + "/prices.csv").c_str(), 0.65, 0, &corr) ==
            MN_OK);

    mn_config cfg;
    mn_config_init(&cfg);
    CHECK(cfg.sh_threshold == 0.02);
    CHECK(cfg.corr_threshold == 0.65);
    CHECK(cfg.rank == 30);

    const mn_layer* layers[] = {sh, bd, corr};
    mn_assembly* assembly = nullptr;
    REQUIRE(mn_assemble(layers, 3, &cfg, &assembly) == MN_OK);
    CHECK(mn_assembly_node_count(assembly) == 8);
    CHECK(mn_assembly_layer_count(assembly) == 3);
    CHECK(std::string(mn_assembly_layer_name(assembly, 0)) == "SH");
    CHECK(std::string(mn_assembly_layer_name(assembly, 2)) == "CORR");

    const auto report = nlohmann::json::parse(mn_assembly_report_json(assembly));
    CHECK(report["nodes_before"] == 12);
    CHECK(report["nodes_after"] == 8);
    CHECK(report["layers"][0]["load"]["dropped_threshold"] == 1);
    CHECK(report["layers"][0]["load"]["dropped_diagonal"] == 1);

    const mn_tensor* tensor = mn_assembly_tensor(assembly);
    size_t d1 = 0, d2 = 0, d3 = 0;
    CHECK(mn_tensor_dims(tensor, &d1, &d2, &d3) == MN_OK);
    CHECK(d1 == 8);
    CHECK(d3 == 3);
    CHECK(std::abs(mn_tensor_frobenius_norm(tensor) - std::sqrt(3.0)) <= 1e-9);

    mn_assembly_free(assembly);
    mn_layer_free(sh);
    mn_layer_free(bd);
    mn_layer_free(corr);
}

TEST_CASE("cp decomposition getters, json round-trip and corcondia") {
    // exact rank-1 tensor 2 * u o v o w over 4x4x2
    const double u[] = {0.5, 0.5, 0.5, 0.5};
    const double v[] = {1.0, 0.0, 0.0, 0.0};
    const double w[] = {0.6, 0.8};
    std::vector<double> data(4 * 4 * 2);
    for (size_t k = 0; k < 2; ++k)
        for (size_t j = 0; j < 4; ++j)
            for (size_t i = 0; i < 4; ++i) data[i + 4 * (j + 4 * k)] = 2.0 * u[i] * v[j] * w[k];

    mn_tensor* tensor = nullptr;
    REQUIRE(mn_tensor_from_dense(4, 4, 2, data.data(), &tensor) == MN_OK);

    double value = 0;
    CHECK(mn_tensor_get(tensor, 0, 0, 1, &value) == MN_OK);
    CHECK(value == 2.0 * 0.5 * 1.0 * 0.8);
    CHECK(mn_tensor_get(tensor, 9, 0, 0, &value) == MN_ERR_OUT_OF_RANGE);

    mn_cp* model = nullptr;
    REQUIRE(mn_cp_compute(tensor, 1, 1e-12, 500, 2, 0, &model) == MN_OK);
    CHECK(mn_cp_rank(model) == 1);
    CHECK(mn_cp_fit(model) >= 1.0 - 1e-9);
    CHECK(mn_cp_converged(model) == 1);

    size_t rank = 0;
    const double* lambdas = mn_cp_lambdas(model, &rank);
    REQUIRE(rank == 1);
    CHECK(std::abs(lambdas[0] - 2.0) <= 1e-9);

    size_t n = 0;
    const double* hubs = mn_cp_hub_factor(model, 0, &n);
    REQUIRE(n == 4);
    for (size_t i = 0; i < 4; ++i) CHECK(std::abs(hubs[i] - 0.5) <= 1e-9);
    CHECK(mn_cp_hub_factor(model, 5, &n) == nullptr);

    double topics[2] = {0, 0};
    REQUIRE(mn_cp_topics_l1(model, 0, topics, 2) == MN_OK);
    CHECK(std::abs(topics[0] + topics[1] - 1.0) <= 1e-12);
    CHECK(mn_cp_topics_l1(model, 0, topics, 1) == MN_ERR_DIMENSION);

    double diag = 0;
    CHECK(mn_corcondia(tensor, model, &diag) == MN_OK);
    CHECK(std::abs(diag - 100.0) <= 1e-6);

    char* json = nullptr;
    REQUIRE(mn_cp_to_json(model, &json) == MN_OK);
    mn_cp* back = nullptr;
    REQUIRE(mn_cp_from_json(json, &back) == MN_OK);
    CHECK(mn_cp_fit(back) == mn_cp_fit(model));
    size_t rank_back = 0;
    CHECK(mn_cp_lambdas(back, &rank_back)[0] == lambdas[0]);
    mn_string_free(json);
    mn_cp_free(back);
    CHECK(mn_cp_from_json("not json", &back) == MN_ERR_PARSE);

    mn_cp_free(model);
    mn_tensor_free(tensor);
}

TEST_CASE("tophits rank-1 through the C api matches hits on one slice") {
    const char* labels[] = {"a", "b", "c", "d"};
    const double weights[] = {0, 0.9, 0.2, 0,  //
                              0, 0,   0.7, 0.1,
                              0.3, 0, 0,   0.5,
                              0, 0.4, 0,   0};
    mn_layer* layer = nullptr;
    REQUIRE(mn_layer_from_dense(labels, 4, weights, 1, "L", &layer) == MN_OK);

    std::vector<double> data(4 * 4);
    for (size_t j = 0; j < 4; ++j)
        for (size_t i = 0; i < 4; ++i) data[i + 4 * j] = weights[i * 4 + j];
    mn_tensor* tensor = nullptr;
    REQUIRE(mn_tensor_from_dense(4, 4, 1, data.data(), &tensor) == MN_OK);

    mn_cp* rank1 = nullptr;
    REQUIRE(mn_tophits_rank1(tensor, 1e-12, 5000, &rank1) == MN_OK);
    mn_hits* hits = nullptr;
    REQUIRE(mn_hits_compute(layer, 1e-12, 5000, &hits) == MN_OK);

    size_t n = 0;
    const double* th = mn_cp_hub_factor(rank1, 0, &n);
    const double* hh = mn_hits_hubs(hits, &n);
    for (size_t i = 0; i < 4; ++i) CHECK(std::abs(th[i] - hh[i]) <= 1e-8);
    const double* topics = mn_cp_topic_factor(rank1, 0, &n);
    REQUIRE(n == 1);
    CHECK(topics[0] == 1.0);

    mn_hits_free(hits);
    mn_cp_free(rank1);
    mn_tensor_free(tensor);
    mn_layer_free(layer);

    mn_tensor* zero = nullptr;
    std::vector<double> zeros(8, 0.0);
    REQUIRE(mn_tensor_from_dense(2, 2, 2, zeros.data(), &zero) == MN_OK);
    mn_cp* out = nullptr;
    CHECK(mn_tophits_rank1(zero, 1e-10, 100, &out) == MN_ERR_INVALID_ARGUMENT);
    mn_tensor_free(zero);
}

TEST_CASE("rank sweep fills fit and corcondia arrays") {
    std::vector<double> data(5 * 5 * 2);
    for (size_t i = 0; i < data.size(); ++i) data[i] = double((i * 2654435761u) % 97) / 97.0;
    mn_tensor* tensor = nullptr;
    REQUIRE(mn_tensor_from_dense(5, 5, 2, data.data(), &tensor) == MN_OK);

    const size_t ranks[] = {1, 2, 3};
    double fits[3] = {0, 0, 0};
    double diags[3] = {0, 0, 0};
    REQUIRE(mn_rank_sweep(tensor, ranks, 3, 1e-8, 500, 2, 0, fits, diags) == MN_OK);
    CHECK(fits[0] > 0.0);
    CHECK(fits[1] >= fits[0] - 1e-6);
    CHECK(std::abs(diags[0] - 100.0) <= 1e-6);
    CHECK(std::isnan(diags[2]));  // rank 3 > K = 2
    mn_tensor_free(tensor);
}

TEST_CASE("tucker through the C api is lossless at full dimensions") {
    std::vector<double> data(3 * 3 * 2);
    for (size_t i = 0; i < data.size(); ++i) data[i] = double(i + 1);
    mn_tensor* tensor = nullptr;
    REQUIRE(mn_tensor_from_dense(3, 3, 2, data.data(), &tensor) == MN_OK);
    mn_tucker* model = nullptr;
    REQUIRE(mn_tucker_compute(tensor, 3, 3, 2, 1e-10, 50, &model) == MN_OK);
    CHECK(mn_tucker_fit(model) >= 1.0 - 1e-10);

    size_t rows = 0, cols = 0;
    const double* f1 = mn_tucker_factor(model, 1, &rows, &cols);
    CHECK(rows == 3);
    CHECK(cols == 3);
    CHECK(f1 != nullptr);
    CHECK(mn_tucker_factor(model, 4, &rows, &cols) == nullptr);

    const mn_tensor* core = mn_tucker_core(model);
    size_t d1 = 0, d2 = 0, d3 = 0;
    CHECK(mn_tensor_dims(core, &d1, &d2, &d3) == MN_OK);
    CHECK(d1 == 3);
    CHECK(d3 == 2);

    CHECK(mn_tucker_compute(tensor, 9, 3, 2, 1e-10, 50, &model) == MN_ERR_INVALID_ARGUMENT);
    mn_tucker_free(model);
    mn_tensor_free(tensor);
}

TEST_CASE("tensor text io through the C api") {
    std::vector<double> data(2 * 3 * 2, 0.0);
    data[0] = 1.0 / 3.0;
    data[7] = -2.5e-13;
    mn_tensor* tensor = nullptr;
    REQUIRE(mn_tensor_from_dense(2, 3, 2, data.data(), &tensor) == MN_OK);

    const std::string path = temp_path("tensor.txt");
    Cleanup cleanup{{path}};
    REQUIRE(mn_tensor_write_text(tensor, path.c_str()) == MN_OK);
    mn_tensor* back = nullptr;
    REQUIRE(mn_tensor_read_text(path.c_str(), &back) == MN_OK);
    for (size_t k = 0; k < 2; ++k)
        for (size_t j = 0; j < 3; ++j)
            for (size_t i = 0; i < 2; ++i) {
                double a = 0, b = 0;
                mn_tensor_get(tensor, i, j, k, &a);
                mn_tensor_get(back, i, j, k, &b);
                CHECK(a == b);
            }
    mn_tensor_free(back);
    mn_tensor_free(tensor);

    CHECK(mn_tensor_write_text(nullptr, path.c_str()) == MN_ERR_INVALID_ARGUMENT);
    CHECK(mn_tensor_read_text("/nonexistent/t.txt", &back) == MN_ERR_IO);
}
