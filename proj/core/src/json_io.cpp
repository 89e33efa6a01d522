#include "perm/json_io.hpp"

#include <fstream>

#include <json.hpp>

namespace perm {

namespace {

using nlohmann::json;

json read_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw SchemaError("cannot open " + path);
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw SchemaError(path + ": " + e.what());
    }
    return j;
}

void write_json(const json& j, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << j.dump(2) << '\n';
}

std::vector<double> number_array(const json& j, const std::string& what) {
    if (!j.is_array()) throw SchemaError(what + " must be an array");
    std::vector<double> out;
    out.reserve(j.size());
    for (const auto& x : j) {
        if (!x.is_number()) throw SchemaError(what + " must contain only numbers");
        out.push_back(x.get<double>());
    }
    return out;
}

DiscreteDistribution parse_marginal(const json& j, const std::string& what) {
    if (!j.is_object()) throw SchemaError(what + " must be an object");
    if (!j.contains("support") || !j.contains("probs"))
        throw SchemaError(what + " must have \"support\" and \"probs\"");
    auto support = number_array(j["support"], what + ".support");
    auto probs = number_array(j["probs"], what + ".probs");
    if (support.size() != probs.size())
        throw SchemaError(what + ": support and probs differ in length");
    if (support.empty()) throw SchemaError(what + ": empty support");
    try {
        return DiscreteDistribution(std::move(support), std::move(probs));
    } catch (const std::invalid_argument& e) {
        throw SchemaError(what + ": " + e.what());
    }
}

ProductDistribution parse_product(const json& j, const std::string& what) {
    if (!j.is_object() || !j.contains("marginals"))
        throw SchemaError(what + " must be an object with \"marginals\"");
    const auto& ms = j["marginals"];
    if (!ms.is_array() || ms.empty())
        throw SchemaError(what + ".marginals must be a non-empty array");
    std::vector<DiscreteDistribution> marginals;
    marginals.reserve(ms.size());
    for (std::size_t i = 0; i < ms.size(); ++i)
        marginals.push_back(
            parse_marginal(ms[i], what + ".marginals[" + std::to_string(i) + "]"));
    return ProductDistribution(std::move(marginals));
}

json marginal_to_json(const DiscreteDistribution& m) {
    return json{{"support", m.support()}, {"probs", m.probs()}};
}

json product_to_json(const ProductDistribution& d) {
    json ms = json::array();
    for (const auto& m : d.marginals()) ms.push_back(marginal_to_json(m));
    return json{{"marginals", std::move(ms)}};
}

}  // namespace

ProductDistribution load_instance(const std::string& path) {
    return parse_product(read_json(path), "instance");
}

pandora::PandoraInstance load_pandora_instance(const std::string& path) {
    json j = read_json(path);
    ProductDistribution rewards = parse_product(j, "instance");
    if (!j.contains("costs")) throw SchemaError("instance must have \"costs\"");
    auto costs = number_array(j["costs"], "instance.costs");
    try {
        return pandora::PandoraInstance(std::move(rewards), std::move(costs));
    } catch (const std::invalid_argument& e) {
        throw SchemaError(std::string("instance: ") + e.what());
    }
}

LabeledMixture load_labeled_mixture(const std::string& path) {
    json j = read_json(path);
    if (!j.is_object() || !j.contains("labels") || !j.contains("conditionals"))
        throw SchemaError("mixture must have \"labels\" and \"conditionals\"");
    DiscreteDistribution label_dist = parse_marginal(j["labels"], "mixture.labels");
    const auto& cs = j["conditionals"];
    if (!cs.is_array() || cs.size() != label_dist.size())
        throw SchemaError("mixture.conditionals must have one entry per label");
    std::vector<int> labels;
    std::vector<ProductDistribution> conditionals;
    for (std::size_t i = 0; i < cs.size(); ++i) {
        const std::string what = "mixture.conditionals[" + std::to_string(i) + "]";
        if (!cs[i].is_object() || !cs[i].contains("label"))
            throw SchemaError(what + " must have \"label\"");
        if (!cs[i]["label"].is_number_integer())
            throw SchemaError(what + ".label must be an integer");
        labels.push_back(cs[i]["label"].get<int>());
        conditionals.push_back(parse_product(cs[i], what));
    }
    for (std::size_t i = 0; i < labels.size(); ++i) {
        double expected = label_dist.support()[i];
        if (static_cast<double>(labels[i]) != expected)
            throw SchemaError("mixture.conditionals must be ordered by label value");
    }
    return LabeledMixture{std::move(label_dist), std::move(labels), std::move(conditionals)};
}

void save_instance(const ProductDistribution& d, const std::string& path) {
    write_json(product_to_json(d), path);
}

void save_pandora_instance(const pandora::PandoraInstance& inst, const std::string& path) {
    json j = product_to_json(inst.rewards);
    j["costs"] = inst.costs;
    write_json(j, path);
}

pandora::PandoraPolicy load_pandora_policy(const std::string& path) {
    json j = read_json(path);
    if (!j.is_object() || !j.contains("order") || !j.contains("sigmas"))
        throw SchemaError("policy must have \"order\" and \"sigmas\"");
    pandora::PandoraPolicy p;
    for (const auto& x : j["order"]) {
        if (!x.is_number_unsigned()) throw SchemaError("policy.order must contain indices");
        p.order.push_back(x.get<std::size_t>());
    }
    p.sigmas = number_array(j["sigmas"], "policy.sigmas");
    if (p.order.size() != p.sigmas.size())
        throw SchemaError("policy: order and sigmas differ in length");
    if (j.contains("budget")) {
        if (!j["budget"].is_number()) throw SchemaError("policy.budget must be a number");
        p.budget = j["budget"].get<double>();
    }
    return p;
}

void save_pandora_policy(const pandora::PandoraPolicy& p, const std::string& path) {
    json j{{"order", p.order}, {"sigmas", p.sigmas}};
    if (p.budget) j["budget"] = *p.budget;
    write_json(j, path);
}

}  // namespace perm
