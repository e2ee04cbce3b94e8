#include "mslcp/instance_io.hpp"

#include <fstream>
#include <initializer_list>
#include <sstream>
#include <string_view>

#include <json.hpp>

#include "mslcp/error.hpp"

namespace mslcp {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

void reject_unknown(const json& obj, std::string_view where, std::initializer_list<std::string_view> allowed) {
    if (!obj.is_object()) throw InputError(std::string(where) + ": expected an object");
    for (const auto& [key, _] : obj.items()) {
        bool known = false;
        for (auto a : allowed) known = known || key == a;
        if (!known) throw InputError(std::string(where) + ": unknown field '" + key + "'");
    }
}

const json& required(const json& obj, const char* key, std::string_view where) {
    auto it = obj.find(key);
    if (it == obj.end()) throw InputError(std::string(where) + ": missing field '" + key + "'");
    return *it;
}

double number(const json& v, std::string_view what) {
    if (!v.is_number()) throw InputError(std::string(what) + ": expected a number");
    return v.get<double>();
}

int integer(const json& v, std::string_view what) {
    if (!v.is_number_integer()) throw InputError(std::string(what) + ": expected an integer");
    return v.get<int>();
}

Instance from_json(const json& doc) {
    reject_unknown(doc, "instance", {"format_version", "horizon_hr", "locations", "types", "units", "policy"});
    const int version = integer(required(doc, "format_version", "instance"), "format_version");
    if (version != kInstanceFormatVersion)
        throw InputError("unsupported instance format_version " + std::to_string(version));

    Instance inst;
    inst.horizon_hr = number(required(doc, "horizon_hr", "instance"), "horizon_hr");

    const auto& locs = required(doc, "locations", "instance");
    if (!locs.is_array()) throw InputError("locations: expected an array");
    for (const auto& l : locs) {
        if (!l.is_string()) throw InputError("locations: expected strings");
        inst.locations.push_back(l.get<std::string>());
    }

    const auto& types = required(doc, "types", "instance");
    if (!types.is_array()) throw InputError("types: expected an array");
    for (const auto& t : types) {
        reject_unknown(t, "type", {"id", "name", "duration_min", "interval_hr"});
        MaintenanceType mt;
        mt.id = integer(required(t, "id", "type"), "type.id");
        if (auto it = t.find("name"); it != t.end()) {
            if (!it->is_string()) throw InputError("type.name: expected a string");
            mt.name = it->get<std::string>();
        }
        mt.duration_min = integer(required(t, "duration_min", "type"), "type.duration_min");
        mt.interval_hr = number(required(t, "interval_hr", "type"), "type.interval_hr");
        inst.types.push_back(std::move(mt));
    }

    const auto& units = required(doc, "units", "instance");
    if (!units.is_array()) throw InputError("units: expected an array");
    for (const auto& u : units) {
        reject_unknown(u, "unit", {"name", "initial_age_hr", "mos"});
        Unit unit;
        if (auto it = u.find("name"); it != u.end()) {
            if (!it->is_string()) throw InputError("unit.name: expected a string");
            unit.name = it->get<std::string>();
        }
        if (auto it = u.find("initial_age_hr"); it != u.end()) {
            if (!it->is_array()) throw InputError("unit.initial_age_hr: expected an array");
            for (const auto& b : *it) unit.initial_age_hr.push_back(number(b, "unit.initial_age_hr"));
        } else {
            unit.initial_age_hr.assign(inst.types.size(), 0.0);
        }
        const auto& mos = required(u, "mos", "unit");
        if (!mos.is_array()) throw InputError("unit.mos: expected an array");
        for (const auto& m : mos) {
            reject_unknown(m, "mo", {"location", "start_hr", "end_hr"});
            MaintenanceOpportunity mo;
            const auto& loc = required(m, "location", "mo");
            if (!loc.is_string()) throw InputError("mo.location: expected a location name");
            mo.location = inst.location_index(loc.get<std::string>());
            if (mo.location < 0) throw InputError("mo.location: unknown location '" + loc.get<std::string>() + "'");
            mo.start_hr = number(required(m, "start_hr", "mo"), "mo.start_hr");
            mo.end_hr = number(required(m, "end_hr", "mo"), "mo.end_hr");
            unit.mos.push_back(mo);
        }
        inst.units.push_back(std::move(unit));
    }

    if (auto it = doc.find("policy"); it != doc.end()) {
        const auto& p = *it;
        reject_unknown(p, "policy", {"day_start", "night_start", "max_day_locations", "teams_per_shift", "epsilon"});
        if (p.contains("day_start")) inst.policy.day_start = number(p["day_start"], "policy.day_start");
        if (p.contains("night_start")) inst.policy.night_start = number(p["night_start"], "policy.night_start");
        if (p.contains("max_day_locations"))
            inst.policy.max_day_locations = integer(p["max_day_locations"], "policy.max_day_locations");
        if (p.contains("teams_per_shift"))
            inst.policy.teams_per_shift = integer(p["teams_per_shift"], "policy.teams_per_shift");
        if (p.contains("epsilon")) inst.policy.epsilon = number(p["epsilon"], "policy.epsilon");
    }

    renumber(inst);
    return inst;
}

}  // namespace

Instance parse_instance(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw InputError(std::string("instance is not valid JSON: ") + e.what());
    }
    return from_json(doc);
}

Instance load_instance(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open instance file " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_instance(buf.str());
}

std::string dump_instance(const Instance& inst) {
    ordered_json doc;
    doc["format_version"] = kInstanceFormatVersion;
    doc["horizon_hr"] = inst.horizon_hr;
    doc["locations"] = inst.locations;
    doc["types"] = ordered_json::array();
    for (const auto& t : inst.types) {
        ordered_json jt;
        jt["id"] = t.id;
        if (!t.name.empty()) jt["name"] = t.name;
        jt["duration_min"] = t.duration_min;
        jt["interval_hr"] = t.interval_hr;
        doc["types"].push_back(std::move(jt));
    }
    doc["units"] = ordered_json::array();
    for (const auto& u : inst.units) {
        ordered_json ju;
        if (!u.name.empty()) ju["name"] = u.name;
        ju["initial_age_hr"] = u.initial_age_hr;
        ju["mos"] = ordered_json::array();
        for (const auto& m : u.mos) {
            ordered_json jm;
            jm["location"] = inst.locations.at(static_cast<std::size_t>(m.location));
            jm["start_hr"] = m.start_hr;
            jm["end_hr"] = m.end_hr;
            ju["mos"].push_back(std::move(jm));
        }
        doc["units"].push_back(std::move(ju));
    }
    ordered_json p;
    p["day_start"] = inst.policy.day_start;
    p["night_start"] = inst.policy.night_start;
    p["max_day_locations"] = inst.policy.max_day_locations;
    p["teams_per_shift"] = inst.policy.teams_per_shift;
    p["epsilon"] = inst.policy.epsilon;
    doc["policy"] = std::move(p);
    return doc.dump(2) + "\n";
}

void save_instance(const Instance& inst, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InputError("cannot write instance file " + path.string());
    out << dump_instance(inst);
}

}  // namespace mslcp
