#include "nfvq/schedule_io.hpp"

#include "json.hpp"
#include "nfvq/error.hpp"

namespace nfvq {

using json = nlohmann::json;

std::string save_schedule(const Schedule& schedule) {
   const AssignmentTable& table = schedule.table();
   json vars = json::array();
   auto entry = [&](const char* name, std::size_t a) {
      const Assignment& as = table[a];
      return json{{"var", name},
                  {"i", as.chain + 1},
                  {"j", as.step + 1},
                  {"m", as.vm + 1}};
   };
   for (std::size_t a = 0; a < table.size(); ++a) {
      if (schedule.x(a)) vars.push_back(entry("x", a));
   }
   const char* names[] = {"y", "z", "p"};
   for (int f = 0; f < 3; ++f) {
      for (std::size_t a = 0; a < table.size(); ++a) {
         for (int t = 1; t <= schedule.horizon(); ++t) {
            const bool v = f == 0   ? schedule.y(a, t)
                           : f == 1 ? schedule.z(a, t)
                                    : schedule.p(a, t);
            if (!v) continue;
            json e = entry(names[f], a);
            e["t"] = t;
            vars.push_back(std::move(e));
         }
      }
   }
   json doc;
   doc["t_max"] = schedule.horizon();
   doc["variables"] = std::move(vars);
   return doc.dump(2) + "\n";
}

Schedule load_schedule(const Instance& instance, std::string_view json_text) {
   json doc;
   try {
      doc = json::parse(json_text);
   } catch (const json::parse_error& e) {
      throw ParseError(std::string("schedule is not valid JSON: ") + e.what());
   }
   if (!doc.is_object() || !doc.contains("t_max") ||
       !doc["t_max"].is_number_integer()) {
      throw ParseError("schedule: missing integer 't_max'");
   }
   if (!doc.contains("variables") || !doc["variables"].is_array()) {
      throw ParseError("schedule: missing 'variables' array");
   }
   Schedule s(instance, doc["t_max"].get<int>());

   auto index = [](const json& e, const char* key) -> long {
      if (!e.contains(key) || !e[key].is_number_integer()) {
         throw ParseError(std::string("schedule variable missing integer '") +
                          key + "'");
      }
      return e[key].get<long>();
   };
   for (const json& e : doc["variables"]) {
      if (!e.is_object() || !e.contains("var") || !e["var"].is_string()) {
         throw ParseError("schedule variable missing 'var'");
      }
      const std::string var = e["var"].get<std::string>();
      const long i = index(e, "i");
      const long j = index(e, "j");
      const long m = index(e, "m");
      if (i < 1 || j < 1 || m < 1 ||
          static_cast<std::size_t>(i) > instance.chain_count() ||
          static_cast<std::size_t>(j) >
               instance.step_count(static_cast<std::size_t>(i - 1)) ||
          static_cast<std::size_t>(m) > instance.vm_count()) {
         throw IndexError("schedule variable index out of range");
      }
      const std::size_t a =
           s.at(static_cast<std::size_t>(i - 1), static_cast<std::size_t>(j - 1),
                static_cast<std::size_t>(m - 1));
      if (var == "x") {
         s.set_x(a, true);
         continue;
      }
      const long t = index(e, "t");
      if (t < 1 || t > s.horizon()) {
         throw IndexError("schedule slot " + std::to_string(t) +
                          " outside 1.." + std::to_string(s.horizon()));
      }
      const int slot = static_cast<int>(t);
      if (var == "y") {
         s.set_y(a, slot, true);
      } else if (var == "z") {
         s.set_z(a, slot, true);
      } else if (var == "p") {
         s.set_p(a, slot, true);
      } else {
         throw ParseError("unknown schedule variable '" + var + "'");
      }
   }
   return s;
}

}  // namespace nfvq
