#pragma once

#include <string>

#include "ontogdss/ontogdss.h"

namespace httplib {
class Server;
}

namespace ontogdss::http {

struct Reply {
  int status = 200;
  std::string body;
};

// Translate one HTTP request into an engine command and run it.
// Unknown paths give 404, known paths with the wrong method give 405.
// A text/csv body on the matrix route is read as a CSV matrix.
Reply handle(ontogdss_engine* engine, const std::string& method, const std::string& path, const std::string& body,
             const std::string& content_type = "application/json");

// Route every request on `server` through handle().
void mount(httplib::Server& server, ontogdss_engine* engine);

}  // namespace ontogdss::http
