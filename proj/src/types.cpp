#include "aurora/types.hpp"

#include <sstream>

namespace aurora {

const char* to_string(Weather w) {
  switch (w) {
    case Weather::Clear: return "clear";
    case Weather::Fog: return "fog";
    case Weather::Rain: return "rain";
    case Weather::Snow: return "snow";
  }
  return "clear";
}

const char* to_string(TimeOfDay t) {
  return t == TimeOfDay::Day ? "day" : "night";
}

const char* to_string(LensCondition l) {
  switch (l) {
    case LensCondition::None: return "none";
    case LensCondition::Raindrop: return "raindrop";
    case LensCondition::Snowflake: return "snowflake";
  }
  return "none";
}

Weather weather_from_string(const std::string& s) {
  if (s == "clear") return Weather::Clear;
  if (s == "fog") return Weather::Fog;
  if (s == "rain") return Weather::Rain;
  if (s == "snow") return Weather::Snow;
  throw InvalidSeverity("unknown weather: " + s);
}

TimeOfDay time_of_day_from_string(const std::string& s) {
  if (s == "day") return TimeOfDay::Day;
  if (s == "night") return TimeOfDay::Night;
  throw InvalidSeverity("unknown time of day: " + s);
}

LensCondition lens_from_string(const std::string& s) {
  if (s == "none") return LensCondition::None;
  if (s == "raindrop") return LensCondition::Raindrop;
  if (s == "snowflake") return LensCondition::Snowflake;
  throw InvalidSeverity("unknown lens condition: " + s);
}

double severity_table_value(Weather weather, int severity_level) {
  static constexpr double kFog[3] = {0.01, 0.1, 0.2};    // m^-1
  static constexpr double kRain[3] = {10.0, 100.0, 200.0};  // mm/hr
  static constexpr double kSnow[3] = {0.5, 1.5, 2.5};    // mm/hr
  if (severity_level < 1 || severity_level > 3) {
    throw InvalidSeverity("severity level out of range: " +
                          std::to_string(severity_level));
  }
  switch (weather) {
    case Weather::Fog: return kFog[severity_level - 1];
    case Weather::Rain: return kRain[severity_level - 1];
    case Weather::Snow: return kSnow[severity_level - 1];
    case Weather::Clear: break;
  }
  throw InvalidSeverity("clear weather has no severity table entry");
}

const char* severity_unit(Weather weather) {
  switch (weather) {
    case Weather::Fog: return "m^-1";
    case Weather::Rain:
    case Weather::Snow: return "mm/hr";
    case Weather::Clear: return "";
  }
  return "";
}

WeatherSpec make_weather_spec(Weather weather, int severity_level,
                              TimeOfDay time_of_day, LensCondition lens,
                              std::uint64_t seed) {
  if (severity_level < 0 || severity_level > 3) {
    throw InvalidSeverity("severity level must be in {0,1,2,3}, got " +
                          std::to_string(severity_level));
  }
  if ((weather == Weather::Clear) != (severity_level == 0)) {
    throw InvalidSeverity("weather=clear iff severity_level=0");
  }
  WeatherSpec spec;
  spec.weather = weather;
  spec.severity_level = severity_level;
  spec.time_of_day = time_of_day;
  spec.lens = lens;
  spec.seed = seed;
  if (severity_level > 0) {
    spec.severity_value = severity_table_value(weather, severity_level);
    spec.severity_unit = severity_unit(weather);
  }
  return spec;
}

namespace {

std::string severity_phrase(const WeatherSpec& spec) {
  switch (spec.severity_level) {
    case 1: return "light";
    case 2: return "moderate";
    case 3: return "heavy";
    default: return "";
  }
}

std::string format_value(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

}  // namespace

std::string annotation_prompt(const WeatherSpec& spec, const std::string& scene) {
  std::ostringstream os;
  os << "A " << to_string(spec.time_of_day) << "time driving scene";
  if (!scene.empty()) os << " in a " << scene << " environment";
  if (spec.weather == Weather::Clear) {
    os << " under clear weather";
  } else {
    os << " under " << severity_phrase(spec) << " " << to_string(spec.weather)
       << " (" << format_value(spec.severity_value) << " " << spec.severity_unit
       << ")";
  }
  if (spec.lens == LensCondition::Raindrop) {
    os << ", with adherent raindrops on the camera lens";
  } else if (spec.lens == LensCondition::Snowflake) {
    os << ", with snowflakes stuck to the camera lens";
  }
  os << ".";
  return os.str();
}

SampleAnnotation make_annotation(const WeatherSpec& spec, const std::string& scene) {
  SampleAnnotation ann;
  ann.weather = to_string(spec.weather);
  ann.severity_level = spec.severity_level;
  ann.severity_value = spec.severity_value;
  ann.unit = spec.severity_unit;
  ann.time_of_day = to_string(spec.time_of_day);
  ann.lens = to_string(spec.lens);
  ann.scene = scene;
  ann.prompt = annotation_prompt(spec, scene);
  return ann;
}

}  // namespace aurora
