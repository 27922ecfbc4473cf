#pragma once

#define MULTIGROUP_VERSION "0.1.0"
