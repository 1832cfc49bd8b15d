#include "gi0/config.hpp"

#include <stdexcept>

#include <json.hpp>

namespace gi0 {

namespace {

using nlohmann::json;

EstimatorConfig method_from_json(const json& j) {
    if (j.is_string()) return config_for(j.get<std::string>());
    if (!j.is_object()) throw std::invalid_argument("config: method must be a string or object");
    EstimatorConfig cfg = config_for(j.at("method").get<std::string>());
    if (j.contains("stat")) cfg.mgf_stat = gof_from_name(j.at("stat").get<std::string>());
    if (j.contains("omega")) cfg.mdpd_omega = j.at("omega").get<double>();
    if (j.contains("lambda")) cfg.mple_lambda = j.at("lambda").get<double>();
    if (j.contains("r")) cfg.lme_r = j.at("r").get<double>();
    if (j.contains("tol")) cfg.tol = j.at("tol").get<double>();
    if (j.contains("max_iter")) cfg.max_iter = j.at("max_iter").get<int>();
    if (j.contains("alpha_box")) {
        cfg.alpha_box = {j.at("alpha_box").at(0).get<double>(),
                         j.at("alpha_box").at(1).get<double>()};
    }
    if (j.contains("gamma_box")) {
        cfg.gamma_box = {j.at("gamma_box").at(0).get<double>(),
                         j.at("gamma_box").at(1).get<double>()};
    }
    if (!cfg.valid()) throw std::invalid_argument("config: invalid estimator settings");
    return cfg;
}

ThresholdRule rule_from_json(const json& j) {
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "U0") return ThresholdRule::u0();
    if (kind == "Quantile") return ThresholdRule::quantile(j.at("p").get<double>());
    if (kind == "Hill") return ThresholdRule::hill(j.value("window", 0));
    if (kind == "ADAuto") {
        return ThresholdRule::ad_auto(j.value("candidates", 5), j.value("alpha_level", 0.05),
                                      j.value("n_boot", 99));
    }
    throw std::invalid_argument("config: unknown threshold rule kind: " + kind);
}

}  // namespace

ExperimentGrid grid_from_json_text(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw std::invalid_argument(std::string("config: malformed JSON: ") + e.what());
    }
    ExperimentGrid g;
    try {
        g.alphas = j.at("alphas").get<std::vector<double>>();
        g.gammas = j.at("gammas").get<std::vector<double>>();
        g.sizes = j.at("sizes").get<std::vector<std::size_t>>();
        g.replicates = j.at("replicates").get<int>();
        g.master_seed = j.at("master_seed").get<std::uint64_t>();
        for (const json& m : j.at("methods")) g.methods.push_back(method_from_json(m));
        if (j.contains("contamination") && !j.at("contamination").is_null()) {
            const json& c = j.at("contamination");
            g.contamination = ContaminationSpec{c.at("epsilon").get<double>(),
                                                c.at("c_value").get<double>()};
        }
        if (j.contains("threshold_rule") && !j.at("threshold_rule").is_null()) {
            g.threshold_rule = rule_from_json(j.at("threshold_rule"));
        }
        if (j.contains("measure_time")) g.measure_time = j.at("measure_time").get<bool>();
    } catch (const json::exception& e) {
        throw std::invalid_argument(std::string("config: ") + e.what());
    }
    if (!g.valid()) throw std::invalid_argument("config: invalid experiment grid");
    return g;
}

std::vector<RoiSpec> rois_from_json_text(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw std::invalid_argument(std::string("rois: malformed JSON: ") + e.what());
    }
    std::vector<RoiSpec> rois;
    try {
        for (const json& r : j) {
            RoiSpec roi;
            roi.name = r.at("name").get<std::string>();
            roi.x0 = r.at("x0").get<std::size_t>();
            roi.y0 = r.at("y0").get<std::size_t>();
            roi.w = r.at("w").get<std::size_t>();
            roi.h = r.at("h").get<std::size_t>();
            if (roi.w * roi.h < 2) throw std::invalid_argument("rois: ROI smaller than 2 pixels");
            rois.push_back(std::move(roi));
        }
    } catch (const json::exception& e) {
        throw std::invalid_argument(std::string("rois: ") + e.what());
    }
    return rois;
}

}  // namespace gi0
