#include "srmdp/errors.hpp"

#include <iostream>
#include <mutex>
#include <utility>

namespace srmdp {
namespace {

std::mutex handler_mutex;
WarnHandler handler;  // empty = default (stderr)

}  // namespace

void set_warn_handler(WarnHandler h) {
  std::lock_guard<std::mutex> lock(handler_mutex);
  handler = std::move(h);
}

void warn(const std::string& message) {
  WarnHandler h;
  {
    std::lock_guard<std::mutex> lock(handler_mutex);
    h = handler;
  }
  if (h)
    h(message);
  else
    std::cerr << "warning: " << message << '\n';
}

}  // namespace srmdp
