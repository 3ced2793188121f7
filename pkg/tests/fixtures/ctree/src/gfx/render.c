/* render.c */

#include "render.h"
#include "texture.h"
#include "math_util.h"

void render_unit(void) {}
