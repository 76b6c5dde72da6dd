#pragma once

#define MULTINET_VERSION_MAJOR 0
#define MULTINET_VERSION_MINOR 1
#define MULTINET_VERSION_PATCH 0
#define MULTINET_VERSION_STRING "0.1.0"
