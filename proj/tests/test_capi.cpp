#include "levylab/levylab.h"
int main() { return 0; }
