#pragma once

#define SPHERELAB_VERSION "0.1.0"
