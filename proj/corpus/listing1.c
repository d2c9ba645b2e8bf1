// Iterations 2 and 7 both touch arr[14].
int arr[1000];

int main() {
#pragma omp parallel for
#pragma drs
  for (int i = 0; i < 10; i++) {
    arr[i % 6 + 6 * i] = arr[2 * i] + 1;
  }
}
